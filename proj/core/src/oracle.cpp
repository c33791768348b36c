#include "lgfdm/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgfdm {

namespace {

constexpr std::size_t kMaxCandidates = std::size_t{1} << 24;

std::size_t guarded_candidate_count(std::size_t asize, std::size_t n) {
  if (asize == 0) throw std::invalid_argument("oracle: empty component alphabet");
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (total > kMaxCandidates / asize)
      throw std::invalid_argument("oracle: candidate space exceeds 2^24");
    total *= asize;
  }
  return total;
}

double candidate_distance(std::span<const cplx> y, const CMat& psi,
                          std::span<const double> alphabet, std::size_t idx) {
  const std::size_t n = psi.cols();
  double dist = 0.0;
  for (std::size_t i = 0; i < psi.rows(); ++i) {
    cplx r = y[i];
    std::size_t rem = idx;
    for (std::size_t j = 0; j < n; ++j) {
      r -= psi(i, j) * alphabet[rem % alphabet.size()];
      rem /= alphabet.size();
    }
    dist += std::norm(r);
  }
  return dist;
}

}  // namespace

std::vector<double> exhaustive_map(std::span<const cplx> y, const CMat& psi_c,
                                   std::span<const double> alphabet_c) {
  if (y.size() != psi_c.rows())
    throw std::invalid_argument("oracle: observation length differs from Psi rows");
  const std::size_t n = psi_c.cols();
  const std::size_t total = guarded_candidate_count(alphabet_c.size(), n);

  std::size_t best_idx = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double d = candidate_distance(y, psi_c, alphabet_c, idx);
    if (d < best) {
      best = d;
      best_idx = idx;
    }
  }

  std::vector<double> decision(n);
  std::size_t rem = best_idx;
  for (std::size_t j = 0; j < n; ++j) {
    decision[j] = alphabet_c[rem % alphabet_c.size()];
    rem /= alphabet_c.size();
  }
  return decision;
}

Marginals exact_marginals(std::span<const cplx> y, const CMat& psi_c,
                          std::span<const double> alphabet_c) {
  if (y.size() != psi_c.rows())
    throw std::invalid_argument("oracle: observation length differs from Psi rows");
  const std::size_t n = psi_c.cols();
  const std::size_t asize = alphabet_c.size();
  const std::size_t total = guarded_candidate_count(asize, n);

  // First pass for the distance minimum keeps exp() in range.
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < total; ++idx)
    min_dist = std::min(min_dist, candidate_distance(y, psi_c, alphabet_c, idx));

  Marginals m(n, std::vector<double>(asize, 0.0));
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double w =
        std::exp(-(candidate_distance(y, psi_c, alphabet_c, idx) - min_dist));
    std::size_t rem = idx;
    for (std::size_t j = 0; j < n; ++j) {
      m[j][rem % asize] += w;
      rem /= asize;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (double v : m[j]) sum += v;
    for (double& v : m[j]) v /= sum;
  }
  return m;
}

DataFrame matched_filter_decide(std::span<const cplx> y, const CMat& a,
                                const SymbolAlphabet& alphabet) {
  const std::vector<cplx> soft = a.adjoint() * y;
  DataFrame frame;
  frame.symbols.resize(soft.size());
  for (std::size_t j = 0; j < soft.size(); ++j) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < alphabet.points.size(); ++p) {
      const double d = std::norm(soft[j] - alphabet.points[p]);
      if (d < bd) {
        bd = d;
        best = p;
      }
    }
    frame.symbols[j] = alphabet.points[best];
  }
  frame.source_bits = demap_frame(frame, alphabet);
  return frame;
}

double theoretical_ber(TheoryChannel channel, double ebn0_db) {
  if (!std::isfinite(ebn0_db))
    throw std::invalid_argument("theoretical_ber: ebn0_db must be finite");
  const double g = std::pow(10.0, ebn0_db / 10.0);
  switch (channel) {
    case TheoryChannel::awgn_qpsk:
      // Q(sqrt(2 g)) = erfc(sqrt(g)) / 2
      return 0.5 * std::erfc(std::sqrt(g));
    case TheoryChannel::rayleigh_qpsk:
      return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
  }
  throw std::invalid_argument("theoretical_ber: unknown channel");
}

TheoryCurve theory_curve(TheoryChannel channel, std::span<const double> ebn0_db) {
  TheoryCurve c;
  c.channel = channel;
  c.points.reserve(ebn0_db.size());
  for (double db : ebn0_db) c.points.emplace_back(db, theoretical_ber(channel, db));
  return c;
}

}  // namespace lgfdm
