#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lgfdm/rng.hpp"
#include "lgfdm/waveform.hpp"
#include "testutil.hpp"

using namespace lgfdm;

namespace {

WaveformParams params(int k, int m, FilterKind f = FilterKind::martin) {
  WaveformParams p;
  p.subcarriers = k;
  p.subsymbols = m;
  p.mod_order = 4;
  p.filter = f;
  return p;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW(params(2, 3).validate());
  CHECK_THROWS_AS(params(3, 2).validate(), std::invalid_argument);  // odd K
  CHECK_THROWS_AS(params(0, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(2, 0).validate(), std::invalid_argument);
  WaveformParams bad_j = params(2, 3);
  bad_j.mod_order = 8;  // not a square constellation
  CHECK_THROWS_AS(bad_j.validate(), std::invalid_argument);
  bad_j.mod_order = 16;
  CHECK_NOTHROW(bad_j.validate());
}

TEST_CASE("rect prototype: unit-energy constant pulse") {
  const PrototypeFilter f = build_prototype_filter(params(2, 1, FilterKind::rect));
  REQUIRE(f.taps.size() == 2);
  CHECK(f.taps[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(f.taps[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(f.energy() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("martin prototype: energy, leading zero, body symmetry") {
  for (int k : {2, 4}) {
    const PrototypeFilter f = build_prototype_filter(params(k, 3));
    const int len = k * 3;
    REQUIRE(f.taps.size() == static_cast<std::size_t>(len));
    CHECK(f.energy() == doctest::Approx(1.0).epsilon(1e-12));
    // frequency sampling puts a structural zero at n = 0 and leaves the
    // body symmetric about KM/2
    CHECK(f.taps[0] == 0.0);
    for (int n = 1; n < len; ++n)
      CHECK(f.taps[n] == doctest::Approx(f.taps[len - n]).epsilon(1e-9));
  }
}

TEST_CASE("martin prototype is near-root-Nyquist at lag K") {
  // the component lattices stay real-orthogonal only if the pulse
  // autocorrelation nearly vanishes at multiples of K
  for (int m : {2, 3, 4}) {
    const WaveformParams p = params(2, m);
    const PrototypeFilter f = build_prototype_filter(p);
    for (int lag = 2; lag < 2 * m; lag += 2) {
      double r = 0.0;
      for (int n = lag; n < 2 * m; ++n) r += f.taps[n] * f.taps[n - lag];
      CHECK(std::abs(r) < 0.02);
    }
  }
}

TEST_CASE("martin prototype: unsupported subsymbol count") {
  CHECK_THROWS_AS(build_prototype_filter(params(2, 7)), std::invalid_argument);
}

TEST_CASE("custom prototype taps pass through normalized") {
  WaveformParams p = params(2, 2, FilterKind::custom);
  p.custom_taps = {2.0, 0.0, 0.0, 0.0};
  const PrototypeFilter f = build_prototype_filter(p);
  CHECK(f.taps[0] == doctest::Approx(1.0).epsilon(1e-12));
  p.custom_taps = {1.0};  // wrong length
  CHECK_THROWS_AS(build_prototype_filter(p), std::invalid_argument);
}

TEST_CASE("zero pad lengths") {
  // L_Z = KM - K/2
  struct Case {
    int k, m, lz, padded;
  };
  for (const Case c : {Case{2, 3, 5, 11}, Case{4, 5, 18, 38}, Case{2, 1, 1, 3}}) {
    const WaveformParams p = params(c.k, c.m, FilterKind::custom);
    WaveformParams pc = p;
    pc.custom_taps.assign(static_cast<std::size_t>(c.k) * c.m, 1.0);
    const PrototypeFilter base = build_prototype_filter(pc);
    const PrototypeFilter padded = zero_pad(base, pc);
    CHECK(padded.pad_length == c.lz);
    CHECK(padded.padded_length() == c.padded);
    CHECK(padded.energy() == doctest::Approx(base.energy()).epsilon(1e-12));
    for (int n = padded.base_length; n < padded.padded_length(); ++n)
      CHECK(padded.taps[n] == 0.0);
    CHECK_THROWS_AS(zero_pad(padded, pc), std::invalid_argument);
  }
}

TEST_CASE("zero pad closure over random (K, M)") {
  std::mt19937 eng(7);
  std::uniform_int_distribution<int> kd(1, 8), md(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 * kd(eng);
    const int m = md(eng);
    WaveformParams p = params(k, m, FilterKind::custom);
    p.custom_taps.assign(static_cast<std::size_t>(k) * m, 1.0);
    const PrototypeFilter padded = zero_pad(build_prototype_filter(p), p);
    CHECK(padded.padded_length() - padded.base_length == k * m - k / 2);
    CHECK(padded.padded_length() == 2 * k * m - k / 2);
  }
}

TEST_CASE("QPSK alphabet") {
  const SymbolAlphabet a = make_qam_alphabet(4);
  REQUIRE(a.points.size() == 4);
  double energy = 0.0;
  for (const cplx& s : a.points) energy += std::norm(s);
  CHECK(energy / 4.0 == doctest::Approx(1.0).epsilon(1e-12));
  const double v = 1.0 / std::sqrt(2.0);
  REQUIRE(a.component_i.size() == 2);
  CHECK(a.component_i[0] == doctest::Approx(-v).epsilon(1e-12));
  CHECK(a.component_i[1] == doctest::Approx(v).epsilon(1e-12));
  CHECK(a.component_q == a.component_i);
  // every point decomposes over the component alphabets
  for (const cplx& s : a.points) {
    CHECK(std::min(std::abs(s.real() - a.component_i[0]),
                   std::abs(s.real() - a.component_i[1])) < 1e-12);
    CHECK(std::min(std::abs(s.imag() - a.component_q[0]),
                   std::abs(s.imag() - a.component_q[1])) < 1e-12);
  }
}

TEST_CASE("16-QAM alphabet basics") {
  const SymbolAlphabet a = make_qam_alphabet(16);
  REQUIRE(a.points.size() == 16);
  double energy = 0.0;
  for (const cplx& s : a.points) energy += std::norm(s);
  CHECK(energy / 16.0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.component_i.size() == 4);
  for (std::size_t i = 1; i < a.component_i.size(); ++i)
    CHECK(a.component_i[i] > a.component_i[i - 1]);
}

TEST_CASE("Gray mapping convention") {
  const SymbolAlphabet a = make_qam_alphabet(4);
  const WaveformParams p = params(2, 1, FilterKind::rect);  // N = 2
  const double v = 1.0 / std::sqrt(2.0);

  const DataFrame f = map_bits({0, 0, 1, 1}, a, p);
  CHECK(std::abs(f.symbols[0] - cplx(v, v)) < 1e-12);
  CHECK(std::abs(f.symbols[1] - cplx(-v, -v)) < 1e-12);

  CHECK_THROWS_AS(map_bits({0, 1}, a, p), std::invalid_argument);
}

TEST_CASE("map/demap round trip") {
  const WaveformParams p = params(2, 3);
  for (int order : {4, 16}) {
    const SymbolAlphabet a = make_qam_alphabet(order);
    Rng rng(11 + order);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<int> bits =
          rng.bits(static_cast<std::size_t>(p.frame_symbols()) * a.bits_per_symbol);
      WaveformParams pj = p;
      pj.mod_order = order;
      const DataFrame f = map_bits(bits, a, pj);
      CHECK(demap_frame(f, a) == bits);
    }
  }
}

TEST_CASE("OFDM corner case: plain GFDM, K=2, M=1, rect") {
  const WaveformParams p = params(2, 1, FilterKind::rect);
  const PrototypeFilter f = build_prototype_filter(p);
  const ModulationMatrix a = assemble_modulation_matrix(f, p, 0);
  REQUIRE(a.rows() == 2);
  REQUIRE(a.cols() == 2);

  // A A^H = I within 1e-12
  const CMat gram = a.entries * a.entries.adjoint();
  CHECK(testutil::max_abs_diff(gram, CMat::identity(2)) < 1e-12);

  // d = [1, 1] -> x = [2, 0]/sqrt(2)
  DataFrame d;
  d.symbols = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
  const TransmitSignal x = modulate_gfdm(d, a);
  CHECK(std::abs(x.samples[0] - cplx(2.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  CHECK(std::abs(x.samples[1]) < 1e-12);

  // unit vector picks out a column; wrong frame length is rejected
  DataFrame unit;
  unit.symbols = {cplx(0.0, 0.0), cplx(1.0, 0.0)};
  const TransmitSignal xu = modulate_gfdm(unit, a);
  for (int n = 0; n < 2; ++n) CHECK(std::abs(xu.samples[n] - a.entries(n, 1)) < 1e-12);
  DataFrame bad;
  bad.symbols = {cplx(1.0, 0.0)};
  CHECK_THROWS_AS(modulate_gfdm(bad, a), std::invalid_argument);
  CHECK_THROWS_AS(modulate_linear_gfdm(bad, a, a), std::invalid_argument);
}

TEST_CASE("OFDM corner case: unitarity for larger K") {
  const WaveformParams p = params(64, 1, FilterKind::rect);
  const ModulationMatrix a =
      assemble_modulation_matrix(build_prototype_filter(p), p, 0);
  const CMat gram = a.entries * a.entries.adjoint();
  CHECK(testutil::max_abs_diff(gram, CMat::identity(64)) < 1e-12);
}

TEST_CASE("linear GFDM matrix geometry (Table 1 configuration)") {
  const WaveformParams p = params(2, 3);
  const auto [a_i, a_q] = linear_gfdm_matrices(p);
  REQUIRE(a_i.rows() == 11);  // 2KM - K/2
  REQUIRE(a_i.cols() == 6);
  CHECK(a_i.tag == ComponentTag::in_phase);
  CHECK(a_q.tag == ComponentTag::quadrature);

  // column (0,0) support sits inside rows 0..5 (base filter length 6,
  // shift 0); the martin pulse's leading zero blanks row 0
  CHECK(a_i.entries(0, 0) == cplx{});
  for (int n = 1; n < 6; ++n) CHECK(std::abs(a_i.entries(n, 0)) > 0.0);
  for (int n = 6; n < 11; ++n) CHECK(a_i.entries(n, 0) == cplx{});
}

TEST_CASE("unit column norms, all matrix flavours") {
  std::mt19937 eng(3);
  std::uniform_int_distribution<int> kd(1, 4), md(2, 4);
  for (int trial = 0; trial < 8; ++trial) {
    const WaveformParams p = params(2 * kd(eng), md(eng));
    const auto [a_i, a_q] = linear_gfdm_matrices(p);
    for (std::size_t c = 0; c < a_i.cols(); ++c) {
      CHECK(a_i.entries.column_norm(c) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(a_q.entries.column_norm(c) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const PrototypeFilter base = build_prototype_filter(p);
    const ModulationMatrix plain = assemble_modulation_matrix(base, p, 0);
    for (std::size_t c = 0; c < plain.cols(); ++c)
      CHECK(plain.entries.column_norm(c) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("A_Q column magnitudes are K/2-shifted A_I magnitudes") {
  const WaveformParams p = params(4, 3);
  const auto [a_i, a_q] = linear_gfdm_matrices(p);
  const int half_k = p.subcarriers / 2;
  for (std::size_t c = 0; c < a_i.cols(); ++c)
    for (std::size_t i = 0; i + half_k < a_i.rows(); ++i)
      CHECK(std::abs(a_q.entries(i + half_k, c)) ==
            doctest::Approx(std::abs(a_i.entries(i, c))).epsilon(1e-12));
}

TEST_CASE("modulation shift preconditions") {
  const WaveformParams p = params(2, 3);
  const PrototypeFilter base = build_prototype_filter(p);
  const PrototypeFilter padded = zero_pad(base, p);
  CHECK_THROWS_AS(assemble_modulation_matrix(base, p, 1), std::invalid_argument);
  CHECK_THROWS_AS(assemble_modulation_matrix(padded, p, 2), std::invalid_argument);
  CHECK_THROWS_AS(assemble_modulation_matrix(padded, p, 500), std::invalid_argument);
  CHECK_NOTHROW(assemble_modulation_matrix(padded, p, 1));
}

TEST_CASE("modulation is linear and respects zero data") {
  const WaveformParams p = params(2, 3);
  const auto [a_i, a_q] = linear_gfdm_matrices(p);
  const SymbolAlphabet alpha = make_qam_alphabet(4);

  DataFrame zero;
  zero.symbols.assign(6, cplx{});
  const TransmitSignal xz = modulate_linear_gfdm(zero, a_i, a_q);
  for (const cplx& v : xz.samples) CHECK(v == cplx{});

  // unit vector picks out a column
  DataFrame unit;
  unit.symbols.assign(6, cplx{});
  unit.symbols[3] = 1.0;
  const TransmitSignal xu = modulate_linear_gfdm(unit, a_i, a_q);
  for (std::size_t n = 0; n < xu.samples.size(); ++n)
    CHECK(std::abs(xu.in_phase[n] - a_i.entries(n, 3)) < 1e-12);

  Rng rng(5);
  const DataFrame f = map_bits(rng.bits(12), alpha, p);

  SUBCASE("component split adds up") {
    const TransmitSignal x = modulate_linear_gfdm(f, a_i, a_q);
    for (std::size_t n = 0; n < x.samples.size(); ++n)
      CHECK(std::abs(x.samples[n] - (x.in_phase[n] + x.quadrature[n])) < 1e-12);
  }

  SUBCASE("purely real / purely imaginary data") {
    DataFrame re = f, im = f;
    for (cplx& s : re.symbols) s = s.real();
    for (cplx& s : im.symbols) s = cplx(0.0, s.imag());
    const TransmitSignal xr = modulate_linear_gfdm(re, a_i, a_q);
    for (const cplx& v : xr.quadrature) CHECK(std::abs(v) < 1e-12);
    const TransmitSignal xi = modulate_linear_gfdm(im, a_i, a_q);
    for (const cplx& v : xi.in_phase) CHECK(std::abs(v) < 1e-12);
  }

  SUBCASE("superposition") {
    const DataFrame g = map_bits(rng.bits(12), alpha, p);
    DataFrame combo;
    combo.symbols.resize(6);
    // real weights keep the superposition component-consistent
    for (int j = 0; j < 6; ++j)
      combo.symbols[j] = 2.0 * f.symbols[j] - 0.5 * g.symbols[j];
    const TransmitSignal xa = modulate_linear_gfdm(f, a_i, a_q);
    const TransmitSignal xb = modulate_linear_gfdm(g, a_i, a_q);
    const TransmitSignal xc = modulate_linear_gfdm(combo, a_i, a_q);
    for (std::size_t n = 0; n < xc.samples.size(); ++n)
      CHECK(std::abs(xc.samples[n] - (2.0 * xa.samples[n] - 0.5 * xb.samples[n])) <
            1e-12);
  }
}

TEST_CASE("matrix CSV dump shape") {
  CMat m(2, 2);
  m(0, 0) = {1.0, -2.0};
  m(1, 1) = {0.5, 0.25};
  std::ostringstream os;
  write_matrix_csv(os, m);
  CHECK(os.str() == "1,-2,0,0\n0,0,0.5,0.25\n");
}
