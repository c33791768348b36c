#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "lgfdm/linalg.hpp"

namespace lgfdm {

enum class FilterKind { martin, rect, custom };

/// Frame geometry: K subcarriers (even), M subsymbols, N = K*M data
/// symbols per frame, square J-QAM mapping.
struct WaveformParams {
  int subcarriers = 2;  // K
  int subsymbols = 3;   // M
  int mod_order = 4;    // J
  FilterKind filter = FilterKind::martin;
  std::vector<double> custom_taps{};

  int frame_symbols() const { return subcarriers * subsymbols; }  // N
  int bits_per_symbol() const;
  int frame_bits() const { return frame_symbols() * bits_per_symbol(); }

  /// Throws std::invalid_argument when any field is out of contract.
  void validate() const;
};

/// Real prototype pulse. base_length is always K*M; zero_pad() appends
/// the pad_length = K*M - K/2 zeros that turn circular filtering into
/// linear filtering.
struct PrototypeFilter {
  std::vector<double> taps;
  int base_length = 0;
  int pad_length = 0;

  int padded_length() const { return static_cast<int>(taps.size()); }
  bool is_padded() const { return pad_length > 0; }
  double energy() const;
};

enum class ComponentTag { full, in_phase, quadrature };

/// Columns are modulated, shifted prototype pulses, ordered subcarrier-major:
/// column index c = k + m*K.
struct ModulationMatrix {
  CMat entries;
  ComponentTag tag = ComponentTag::full;

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }
};

/// Gray-labelled square QAM constellation with unit average energy, plus
/// the deduplicated per-component (real / imaginary) alphabets, ascending.
struct SymbolAlphabet {
  std::vector<cplx> points;
  std::vector<double> component_i;
  std::vector<double> component_q;
  int bits_per_symbol = 0;
};

SymbolAlphabet make_qam_alphabet(int order);

struct DataFrame {
  std::vector<cplx> symbols;
  std::vector<int> source_bits;

  std::vector<double> real_part() const;
  std::vector<double> imag_part() const;
};

struct TransmitSignal {
  std::vector<cplx> samples;
  std::vector<cplx> in_phase;   // populated by the linear modulator
  std::vector<cplx> quadrature;
};

/// Unit-energy pulse of length K*M, not yet padded. `martin` uses the
/// frequency-sampling synthesis with published side coefficients for
/// subsymbol counts 2..4; `rect` is constant 1/sqrt(K) over the first K
/// samples; `custom` takes params.custom_taps (normalized to unit energy).
PrototypeFilter build_prototype_filter(const WaveformParams& params);

/// Appends K*M - K/2 zeros. Energy is unchanged.
PrototypeFilter zero_pad(const PrototypeFilter& filter, const WaveformParams& params);

/// Plain GFDM (unpadded filter, time_shift 0): square N x N matrix with
/// circular shifts and subcarrier modulation exp(j 2 pi k n / K).
/// Linear GFDM (padded filter, time_shift 0 or K/2): (2KM - K/2) x N matrix
/// with linear shifts, subcarrier modulation and the OQAM phase
/// exp(j pi k / 2); shift 0 yields the in-phase matrix, K/2 the quadrature.
ModulationMatrix assemble_modulation_matrix(const PrototypeFilter& filter,
                                            const WaveformParams& params,
                                            int time_shift);

/// Builds the Linear GFDM matrix pair (A_I, A_Q) from params in one call.
std::pair<ModulationMatrix, ModulationMatrix> linear_gfdm_matrices(
    const WaveformParams& params);

DataFrame map_bits(const std::vector<int>& bits, const SymbolAlphabet& alphabet,
                   const WaveformParams& params);
std::vector<int> demap_frame(const DataFrame& frame, const SymbolAlphabet& alphabet);

/// x = A d.
TransmitSignal modulate_gfdm(const DataFrame& frame, const ModulationMatrix& a);

/// x = A_I Re{d} + j A_Q Im{d}; the two addends are kept in the result.
TransmitSignal modulate_linear_gfdm(const DataFrame& frame,
                                    const ModulationMatrix& a_i,
                                    const ModulationMatrix& a_q);

/// Row-major dump, each cell as "re,im"; cells flattened so a row holds
/// 2*cols numbers.
void write_matrix_csv(std::ostream& os, const CMat& m);

}  // namespace lgfdm
