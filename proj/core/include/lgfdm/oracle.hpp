#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lgfdm/linalg.hpp"
#include "lgfdm/spa.hpp"

namespace lgfdm {

enum class TheoryChannel { awgn_qpsk, rayleigh_qpsk };

struct TheoryCurve {
  TheoryChannel channel;
  std::vector<std::pair<double, double>> points;  // (ebn0_db, pb)
};

/// argmin over every |alphabet|^N candidate component vector of
/// ||y - Psi_c d||^2. Enumeration is guarded at 2^24 candidates.
std::vector<double> exhaustive_map(std::span<const cplx> y, const CMat& psi_c,
                                   std::span<const double> alphabet_c);

/// Exact per-position marginals of exp(-||y - Psi_c d||^2) by full
/// enumeration, max-shifted for numeric stability. Same guard.
Marginals exact_marginals(std::span<const cplx> y, const CMat& psi_c,
                          std::span<const double> alphabet_c);

/// Matched-filter baseline: per-symbol decisions from A^H y, quantized to
/// the nearest constellation point.
DataFrame matched_filter_decide(std::span<const cplx> y, const CMat& a,
                                const SymbolAlphabet& alphabet);

/// awgn_qpsk: Q(sqrt(2 gamma_b)); rayleigh_qpsk: (1 - sqrt(g/(1+g)))/2.
double theoretical_ber(TheoryChannel channel, double ebn0_db);

TheoryCurve theory_curve(TheoryChannel channel, std::span<const double> ebn0_db);

}  // namespace lgfdm
