#include "lgfdm/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace lgfdm {

ChannelRealization toeplitz_from_impulse(std::span<const cplx> h, std::size_t n_cols,
                                         ChannelKind kind) {
  if (h.empty()) throw std::invalid_argument("toeplitz: empty impulse response");
  if (n_cols == 0) throw std::invalid_argument("toeplitz: zero columns");

  ChannelRealization ch;
  ch.kind = kind;
  ch.impulse_response.assign(h.begin(), h.end());
  ch.h = CMat(n_cols + h.size() - 1, n_cols);
  for (std::size_t c = 0; c < n_cols; ++c)
    for (std::size_t t = 0; t < h.size(); ++t) ch.h(c + t, c) = h[t];
  return ch;
}

ChannelRealization awgn_channel(std::size_t n_cols) {
  const cplx one{1.0, 0.0};
  return toeplitz_from_impulse(std::span<const cplx>(&one, 1), n_cols,
                               ChannelKind::awgn);
}

ChannelRealization draw_flat_rayleigh(Rng& rng, std::size_t n_cols) {
  const cplx tap = rng.cgaussian(1.0);
  auto ch = toeplitz_from_impulse(std::span<const cplx>(&tap, 1), n_cols,
                                  ChannelKind::flat_rayleigh);
  return ch;
}

CMat equivalent_matrix(const CMat& h, const ModulationMatrix& a) {
  return h * a.entries;
}

EquivalentMatrices equivalent_matrices(const CMat& h, const ModulationMatrix& a_i,
                                       const ModulationMatrix& a_q) {
  return {h * a_i.entries, h * a_q.entries};
}

ReceivedSignal apply_channel(std::span<const cplx> x, const ChannelRealization& ch,
                             Rng& rng) {
  if (ch.noise_variance < 0.0)
    throw std::invalid_argument("apply_channel: negative noise variance");
  ReceivedSignal y;
  y.samples = ch.h * x;
  if (ch.noise_variance > 0.0)
    for (cplx& v : y.samples) v += rng.cgaussian(ch.noise_variance);
  return y;
}

ReceivedSignal apply_channel(const TransmitSignal& x, const ChannelRealization& ch,
                             Rng& rng) {
  return apply_channel(std::span<const cplx>(x.samples), ch, rng);
}

double ebn0_db_to_sigma2(double ebn0_db, const WaveformParams& params) {
  params.validate();
  if (!std::isfinite(ebn0_db))
    throw std::invalid_argument("ebn0_db must be finite");
  return 1.0 / (params.bits_per_symbol() * std::pow(10.0, ebn0_db / 10.0));
}

}  // namespace lgfdm
