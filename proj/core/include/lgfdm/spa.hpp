#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lgfdm/channel.hpp"
#include "lgfdm/linalg.hpp"
#include "lgfdm/waveform.hpp"

namespace lgfdm {

/// Bipartite graph read off an equivalent-matrix component: factor i is
/// received sample i (row), variable k is data component k (column), and
/// an edge exists where |Psi[i,k]| clears the relative threshold. Factors
/// that end up with no edges stay counted but take no part in message
/// passing.
struct FactorGraph {
  std::size_t factor_count = 0;
  std::size_t variable_count = 0;

  std::vector<int> edge_factor;
  std::vector<int> edge_variable;
  std::vector<cplx> edge_weight;
  std::vector<std::vector<int>> factor_edges;
  std::vector<std::vector<int>> variable_edges;

  std::optional<int> girth;  // nullopt when the graph is a forest

  std::size_t edge_count() const { return edge_weight.size(); }
};

FactorGraph build_factor_graph(const CMat& psi_c, double epsilon = 1e-12);

/// Per-variable probability vectors over the component alphabet; each sums
/// to one.
using Marginals = std::vector<std::vector<double>>;

/// One sum-product instance over a single component graph. Messages are
/// tables over the component alphabet, normalized to unit sum after every
/// update; entries that underflow below 1e-300 are floored to 1e-12 and
/// the table renormalized. The schedule is synchronous flooding: a
/// factor-to-variable pass reads the previous variable-to-factor tables
/// (uniform before the first iteration), then a variable-to-factor pass
/// reads the fresh factor messages.
class SpaInstance {
 public:
  SpaInstance(const FactorGraph& graph, std::span<const cplx> y,
              std::span<const double> component_alphabet);

  void factor_to_variable_pass();
  void variable_to_factor_pass();

  /// Runs `tau` full iterations (factor pass then variable pass).
  void iterate(int tau);

  Marginals marginals() const;

  int iteration() const { return iteration_; }
  std::span<const double> f2v_message(int edge) const;
  std::span<const double> v2f_message(int edge) const;

  /// Overwrites one incoming variable-to-factor table verbatim (no
  /// normalization); message updates are invariant to its scale.
  void set_v2f_message(int edge, std::span<const double> values);

  std::uint64_t multiplications() const { return mults_; }
  std::uint64_t kernel_evaluations() const { return kernel_evals_; }
  std::uint64_t underflow_events() const { return underflows_; }

  /// CSV rows "edge,iteration,alphabet_index,value" for every
  /// factor-to-variable message, appended after each factor pass.
  void set_debug_stream(std::ostream* os) { debug_ = os; }

 private:
  void normalize(double* msg);
  void dump_f2v();

  const FactorGraph* graph_;
  std::vector<cplx> y_;
  std::vector<double> alphabet_;
  int asize_;
  std::vector<double> f2v_, v2f_, scratch_;
  int iteration_ = 0;
  std::uint64_t mults_ = 0;
  std::uint64_t kernel_evals_ = 0;
  std::uint64_t underflows_ = 0;
  std::ostream* debug_ = nullptr;
};

struct SpaResult {
  Marginals in_phase;
  Marginals quadrature;
  std::uint64_t multiplications = 0;
  std::uint64_t underflow_events = 0;
};

/// Combined observation: both component instances read the same received
/// vector. The in-phase graph uses Psi_I, the quadrature graph uses
/// j * Psi_Q. The receiver takes no noise-variance input.
SpaResult run_spa(const ReceivedSignal& y, const EquivalentMatrices& eq,
                  const SymbolAlphabet& alphabet, int tau);

/// Validation mode: each instance reads its own observation vector.
SpaResult run_spa_separated(const ReceivedSignal& y_in_phase,
                            const ReceivedSignal& y_quadrature,
                            const EquivalentMatrices& eq,
                            const SymbolAlphabet& alphabet, int tau);

/// Per-variable argmax with ties broken toward the smaller alphabet index,
/// recombined as d = d_I + j d_Q; source_bits holds the demapped bits.
DataFrame map_decide(const Marginals& in_phase, const Marginals& quadrature,
                     const SymbolAlphabet& alphabet);

/// Closed-form complex-multiplication count
/// C = [(8N^3 - 4N^2 K - 8N^2 + 2NK + 2N)(J/2)^(N-1) + 2N^3 - 8N^2 + 6N] tau,
/// evaluated in checked integer arithmetic (throws std::overflow_error).
std::int64_t complexity_formula(std::int64_t n, std::int64_t k, std::int64_t j,
                                int tau);
std::int64_t complexity_estimate(const WaveformParams& params, int tau);

}  // namespace lgfdm
