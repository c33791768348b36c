#include "lgfdm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgfdm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

Rng Rng::substream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return Rng(splitmix64(splitmix64(master) ^ a) ^ splitmix64(b ^ 0x5851f42d4c957f2dull));
}

double Rng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

cplx Rng::cgaussian(double sigma2) {
  if (sigma2 < 0.0) throw std::invalid_argument("negative noise variance");
  const double s = std::sqrt(sigma2 / 2.0);
  return {s * gaussian(), s * gaussian()};
}

int Rng::bit() { return static_cast<int>(eng_() >> 63); }

std::vector<int> Rng::bits(std::size_t count) {
  std::vector<int> out(count);
  for (auto& b : out) b = bit();
  return out;
}

}  // namespace lgfdm
