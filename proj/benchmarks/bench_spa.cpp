#include <benchmark/benchmark.h>

#include <cmath>

#include "lgfdm/channel.hpp"
#include "lgfdm/oracle.hpp"
#include "lgfdm/rng.hpp"
#include "lgfdm/spa.hpp"
#include "lgfdm/waveform.hpp"

using namespace lgfdm;

namespace {

WaveformParams params_for(int subsymbols) {
  WaveformParams p;
  p.subcarriers = 2;
  p.subsymbols = subsymbols;
  return p;
}

struct Fixture {
  WaveformParams p;
  EquivalentMatrices eq;
  SymbolAlphabet alpha;
  ReceivedSignal y;

  explicit Fixture(int subsymbols) : p(params_for(subsymbols)) {
    const auto [a_i, a_q] = linear_gfdm_matrices(p);
    eq = equivalent_matrices(CMat::identity(a_i.rows()), a_i, a_q);
    alpha = make_qam_alphabet(4);
    Rng rng(1);
    const DataFrame d = map_bits(rng.bits(p.frame_bits()), alpha, p);
    const TransmitSignal x = modulate_linear_gfdm(d, a_i, a_q);
    y.samples = x.samples;
    for (cplx& v : y.samples) v += rng.cgaussian(0.05);
  }
};

void BM_FactorToVariablePass(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const FactorGraph g = build_factor_graph(fx.eq.in_phase);
  SpaInstance inst(g, fx.y.samples, fx.alpha.component_i);
  for (auto _ : state) {
    inst.factor_to_variable_pass();
    inst.variable_to_factor_pass();
  }
  state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_FactorToVariablePass)->Arg(2)->Arg(3)->Arg(4);

void BM_RunSpaFrame(benchmark::State& state) {
  const Fixture fx(3);
  const int tau = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_spa(fx.y, fx.eq, fx.alpha, tau));
  }
}
BENCHMARK(BM_RunSpaFrame)->Arg(1)->Arg(7);

void BM_ExhaustiveMap(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        exhaustive_map(fx.y.samples, fx.eq.in_phase, fx.alpha.component_i));
  }
}
BENCHMARK(BM_ExhaustiveMap)->Arg(3)->Arg(4);

void BM_AssembleLinearMatrices(benchmark::State& state) {
  const WaveformParams p = params_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(linear_gfdm_matrices(p));
  }
}
BENCHMARK(BM_AssembleLinearMatrices)->Arg(3)->Arg(4);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
