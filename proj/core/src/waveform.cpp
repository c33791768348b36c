#include "lgfdm/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace lgfdm {

namespace {

// Frequency-sampling side coefficients (Mirabbasi-Martin), indexed by the
// overlapping factor. G0 = 1 is implicit.
const std::map<int, std::vector<double>>& martin_side_coefficients() {
  static const std::map<int, std::vector<double>> table = {
      {2, {0.70710678118654752}},
      {3, {0.91143783, 0.41143783}},
      {4, {0.97195983, 0.70710678118654752, 0.23514695}},
  };
  return table;
}

void normalize_energy(std::vector<double>& taps) {
  double e = 0.0;
  for (double t : taps) e += t * t;
  if (e <= 0.0) throw std::invalid_argument("prototype filter has zero energy");
  const double scale = 1.0 / std::sqrt(e);
  for (double& t : taps) t *= scale;
}

bool is_square_power_of_four(int j) {
  if (j < 4) return false;
  while (j > 1) {
    if (j % 4 != 0) return false;
    j /= 4;
  }
  return true;
}

int int_log2(int v) {
  int b = 0;
  while ((1 << b) < v) ++b;
  return b;
}

// Binary-reflected Gray decode: gray code word -> integer.
int gray_decode(int g) {
  int b = 0;
  for (; g; g >>= 1) b ^= g;
  return b;
}

int gray_encode(int b) { return b ^ (b >> 1); }

}  // namespace

int WaveformParams::bits_per_symbol() const { return int_log2(mod_order); }

void WaveformParams::validate() const {
  if (subcarriers <= 0 || subcarriers % 2 != 0)
    throw std::invalid_argument("subcarrier count K must be positive and even");
  if (subsymbols <= 0)
    throw std::invalid_argument("subsymbol count M must be positive");
  if (!is_square_power_of_four(mod_order))
    throw std::invalid_argument("constellation order J must be a square power of two (4, 16, ...)");
  if (filter == FilterKind::custom &&
      custom_taps.size() != static_cast<std::size_t>(frame_symbols()))
    throw std::invalid_argument("custom filter taps must have length K*M");
}

double PrototypeFilter::energy() const {
  double e = 0.0;
  for (double t : taps) e += t * t;
  return e;
}

PrototypeFilter build_prototype_filter(const WaveformParams& params) {
  params.validate();
  const int k = params.subcarriers;
  const int m = params.subsymbols;
  const int len = k * m;

  PrototypeFilter f;
  f.base_length = len;
  f.taps.assign(len, 0.0);

  switch (params.filter) {
    case FilterKind::rect: {
      const double v = 1.0 / std::sqrt(static_cast<double>(k));
      for (int n = 0; n < k; ++n) f.taps[n] = v;
      break;
    }
    case FilterKind::martin: {
      const auto& table = martin_side_coefficients();
      const auto it = table.find(m);
      if (it == table.end())
        throw std::invalid_argument(
            "martin filter: no coefficient table for this subsymbol count");
      const std::vector<double>& g = it->second;
      // p[n] = 1 + 2 sum_l (-1)^l G_l cos(2 pi l n / (KM)). The leading tap
      // is an exact zero and the nonzero body is symmetric about KM/2; the
      // side coefficients make the pulse (near-)root-Nyquist at lag K,
      // which carries the real-field orthogonality between the component
      // lattices.
      for (int n = 0; n < len; ++n) {
        double acc = 1.0;
        double sign = -1.0;
        for (std::size_t l = 1; l <= g.size(); ++l) {
          acc += 2.0 * sign * g[l - 1] *
                 std::cos(2.0 * std::numbers::pi * static_cast<double>(l) * n /
                          len);
          sign = -sign;
        }
        f.taps[n] = acc;
      }
      // kill the floating-point dust on the structural zero
      if (std::abs(f.taps[0]) < 1e-9) f.taps[0] = 0.0;
      normalize_energy(f.taps);
      break;
    }
    case FilterKind::custom: {
      f.taps = params.custom_taps;
      normalize_energy(f.taps);
      break;
    }
  }
  return f;
}

PrototypeFilter zero_pad(const PrototypeFilter& filter, const WaveformParams& params) {
  params.validate();
  const int k = params.subcarriers;
  const int m = params.subsymbols;
  if (filter.base_length != k * m)
    throw std::invalid_argument("zero_pad: filter base length is not K*M");
  if (filter.is_padded() ||
      filter.padded_length() != filter.base_length)
    throw std::invalid_argument("zero_pad: filter is already padded");

  PrototypeFilter padded = filter;
  padded.pad_length = k * m - k / 2;
  padded.taps.resize(filter.base_length + padded.pad_length, 0.0);
  return padded;
}

ModulationMatrix assemble_modulation_matrix(const PrototypeFilter& filter,
                                            const WaveformParams& params,
                                            int time_shift) {
  params.validate();
  const int k = params.subcarriers;
  const int m_count = params.subsymbols;
  const int n_data = params.frame_symbols();
  if (filter.base_length != n_data)
    throw std::invalid_argument("modulation matrix: filter base length is not K*M");

  const bool linear = filter.is_padded();
  const int rows = linear ? filter.padded_length() : n_data;
  if (time_shift < 0 || time_shift >= rows)
    throw std::invalid_argument("modulation matrix: time shift exceeds row count");
  if (linear) {
    if (time_shift != 0 && time_shift != k / 2)
      throw std::invalid_argument("linear GFDM time shift must be 0 or K/2");
  } else if (time_shift != 0) {
    throw std::invalid_argument("plain GFDM uses time shift 0");
  }

  ModulationMatrix a;
  a.tag = linear ? (time_shift == 0 ? ComponentTag::in_phase : ComponentTag::quadrature)
                 : ComponentTag::full;
  a.entries = CMat(rows, n_data);

  const int len = filter.padded_length();
  for (int m = 0; m < m_count; ++m) {
    for (int kk = 0; kk < k; ++kk) {
      const int col = kk + m * k;
      const int shift = m * k + time_shift;
      for (int n = 0; n < rows; ++n) {
        double tap;
        if (linear) {
          const int idx = n - shift;
          tap = (idx >= 0 && idx < len) ? filter.taps[idx] : 0.0;
        } else {
          tap = filter.taps[((n - shift) % n_data + n_data) % n_data];
        }
        if (tap == 0.0) continue;
        double phase = 2.0 * std::numbers::pi * kk * n / k;
        if (linear) phase += std::numbers::pi * kk / 2.0;
        a.entries(n, col) = tap * cplx(std::cos(phase), std::sin(phase));
      }
    }
  }
  return a;
}

std::pair<ModulationMatrix, ModulationMatrix> linear_gfdm_matrices(
    const WaveformParams& params) {
  const PrototypeFilter padded = zero_pad(build_prototype_filter(params), params);
  return {assemble_modulation_matrix(padded, params, 0),
          assemble_modulation_matrix(padded, params, params.subcarriers / 2)};
}

SymbolAlphabet make_qam_alphabet(int order) {
  if (!is_square_power_of_four(order))
    throw std::invalid_argument("QAM order must be a square power of two");
  const int levels = static_cast<int>(std::lround(std::sqrt(order)));
  const int axis_bits = int_log2(levels);

  // Odd-integer PAM levels, scaled for unit average symbol energy.
  const double scale =
      1.0 / std::sqrt(2.0 * (static_cast<double>(levels) * levels - 1.0) / 3.0);
  std::vector<double> pam(levels);
  for (int i = 0; i < levels; ++i) pam[i] = (2.0 * i + 1.0 - levels) * scale;

  SymbolAlphabet a;
  a.bits_per_symbol = 2 * axis_bits;
  a.points.resize(order);
  // Point index = concatenated (I bits, Q bits); bit pattern 0 maps to the
  // top level so QPSK 00 -> (+1+j)/sqrt(2).
  for (int bi = 0; bi < levels; ++bi) {
    for (int bq = 0; bq < levels; ++bq) {
      const int li = levels - 1 - gray_decode(bi);
      const int lq = levels - 1 - gray_decode(bq);
      a.points[(bi << axis_bits) | bq] = {pam[li], pam[lq]};
    }
  }
  a.component_i = pam;
  a.component_q = pam;
  return a;
}

std::vector<double> DataFrame::real_part() const {
  std::vector<double> v(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) v[i] = symbols[i].real();
  return v;
}

std::vector<double> DataFrame::imag_part() const {
  std::vector<double> v(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) v[i] = symbols[i].imag();
  return v;
}

DataFrame map_bits(const std::vector<int>& bits, const SymbolAlphabet& alphabet,
                   const WaveformParams& params) {
  params.validate();
  const int n = params.frame_symbols();
  const int bps = alphabet.bits_per_symbol;
  if (bits.size() != static_cast<std::size_t>(n) * bps)
    throw std::invalid_argument("map_bits: expected N*log2(J) bits");

  DataFrame frame;
  frame.source_bits = bits;
  frame.symbols.resize(n);
  for (int s = 0; s < n; ++s) {
    int idx = 0;
    for (int b = 0; b < bps; ++b) idx = (idx << 1) | bits[s * bps + b];
    frame.symbols[s] = alphabet.points[idx];
  }
  return frame;
}

namespace {

int nearest_level(double v, const std::vector<double>& levels) {
  int best = 0;
  double bd = std::abs(v - levels[0]);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const double d = std::abs(v - levels[i]);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

std::vector<int> demap_frame(const DataFrame& frame, const SymbolAlphabet& alphabet) {
  const int bps = alphabet.bits_per_symbol;
  const int axis_bits = bps / 2;
  const int levels = 1 << axis_bits;

  std::vector<int> bits;
  bits.reserve(frame.symbols.size() * bps);
  for (const cplx& s : frame.symbols) {
    const int li = nearest_level(s.real(), alphabet.component_i);
    const int lq = nearest_level(s.imag(), alphabet.component_q);
    const int gi = gray_encode(levels - 1 - li);
    const int gq = gray_encode(levels - 1 - lq);
    for (int b = axis_bits - 1; b >= 0; --b) bits.push_back((gi >> b) & 1);
    for (int b = axis_bits - 1; b >= 0; --b) bits.push_back((gq >> b) & 1);
  }
  return bits;
}

TransmitSignal modulate_gfdm(const DataFrame& frame, const ModulationMatrix& a) {
  if (a.cols() != frame.symbols.size())
    throw std::invalid_argument("modulate: frame length does not match matrix columns");
  TransmitSignal x;
  x.samples = a.entries * std::span<const cplx>(frame.symbols);
  return x;
}

TransmitSignal modulate_linear_gfdm(const DataFrame& frame,
                                    const ModulationMatrix& a_i,
                                    const ModulationMatrix& a_q) {
  if (a_i.rows() != a_q.rows() || a_i.cols() != a_q.cols())
    throw std::invalid_argument("modulate: component matrices disagree in shape");
  if (a_i.cols() != frame.symbols.size())
    throw std::invalid_argument("modulate: frame length does not match matrix columns");

  const std::vector<double> di = frame.real_part();
  const std::vector<double> dq = frame.imag_part();

  TransmitSignal x;
  x.in_phase = a_i.entries * std::span<const double>(di);
  x.quadrature = a_q.entries * std::span<const double>(dq);
  for (cplx& v : x.quadrature) v *= cplx(0.0, 1.0);

  x.samples.resize(x.in_phase.size());
  for (std::size_t n = 0; n < x.samples.size(); ++n)
    x.samples[n] = x.in_phase[n] + x.quadrature[n];
  return x;
}

void write_matrix_csv(std::ostream& os, const CMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).real() << ',' << m(i, j).imag();
    }
    os << '\n';
  }
}

}  // namespace lgfdm
