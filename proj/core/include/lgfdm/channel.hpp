#pragma once

#include <span>
#include <vector>

#include "lgfdm/linalg.hpp"
#include "lgfdm/rng.hpp"
#include "lgfdm/waveform.hpp"

namespace lgfdm {

enum class ChannelKind { awgn, flat_rayleigh, dispersive };

/// One channel draw: impulse response, its linear-convolution Toeplitz
/// matrix and the per-complex-sample noise variance used on top of it.
struct ChannelRealization {
  std::vector<cplx> impulse_response;
  CMat h;  // (n_cols + len(h) - 1) x n_cols
  double noise_variance = 0.0;
  ChannelKind kind = ChannelKind::awgn;
};

struct ReceivedSignal {
  std::vector<cplx> samples;
};

/// Psi_I = H A_I, Psi_Q = H A_Q.
struct EquivalentMatrices {
  CMat in_phase;
  CMat quadrature;
};

/// Linear-convolution matrix: H[i][c] = h[i-c] for 0 <= i-c < len(h).
/// A single tap collapses to the square h0 * I.
ChannelRealization toeplitz_from_impulse(std::span<const cplx> h, std::size_t n_cols,
                                         ChannelKind kind = ChannelKind::dispersive);

ChannelRealization awgn_channel(std::size_t n_cols);

/// Single tap with E[|h0|^2] = 1, redrawn per frame (block fading).
ChannelRealization draw_flat_rayleigh(Rng& rng, std::size_t n_cols);

CMat equivalent_matrix(const CMat& h, const ModulationMatrix& a);
EquivalentMatrices equivalent_matrices(const CMat& h, const ModulationMatrix& a_i,
                                       const ModulationMatrix& a_q);

/// y = H x + w with w circularly-symmetric complex Gaussian of variance
/// ch.noise_variance per sample. Deterministic given the rng state.
ReceivedSignal apply_channel(std::span<const cplx> x, const ChannelRealization& ch,
                             Rng& rng);
ReceivedSignal apply_channel(const TransmitSignal& x, const ChannelRealization& ch,
                             Rng& rng);

/// sigma^2 = Es / (log2(J) * 10^(ebn0_db/10)) with Es = 1 under the unit
/// column-norm and unit average constellation energy conventions.
double ebn0_db_to_sigma2(double ebn0_db, const WaveformParams& params);

}  // namespace lgfdm
