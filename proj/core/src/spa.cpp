#include "lgfdm/spa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace lgfdm {

namespace {

// Shortest cycle in an undirected unweighted graph via BFS from every node.
std::optional<int> shortest_cycle(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    if (adj[root].empty()) continue;
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else if (v != parent[u]) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

}  // namespace

FactorGraph build_factor_graph(const CMat& psi_c, double epsilon) {
  const double peak = psi_c.max_abs();
  if (peak <= 0.0)
    throw std::invalid_argument("factor graph: equivalent matrix is all zero");
  const double threshold = epsilon * peak;

  FactorGraph g;
  g.factor_count = psi_c.rows();
  g.variable_count = psi_c.cols();
  g.factor_edges.resize(g.factor_count);
  g.variable_edges.resize(g.variable_count);

  for (std::size_t i = 0; i < psi_c.rows(); ++i) {
    for (std::size_t k = 0; k < psi_c.cols(); ++k) {
      const cplx w = psi_c(i, k);
      if (std::abs(w) <= threshold) continue;
      const int e = static_cast<int>(g.edge_count());
      g.edge_factor.push_back(static_cast<int>(i));
      g.edge_variable.push_back(static_cast<int>(k));
      g.edge_weight.push_back(w);
      g.factor_edges[i].push_back(e);
      g.variable_edges[k].push_back(e);
    }
  }

  // Girth over the bipartite node set: factors first, then variables.
  std::vector<std::vector<int>> adj(g.factor_count + g.variable_count);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const int f = g.edge_factor[e];
    const int v = static_cast<int>(g.factor_count) + g.edge_variable[e];
    adj[f].push_back(v);
    adj[v].push_back(f);
  }
  g.girth = shortest_cycle(adj);
  return g;
}

SpaInstance::SpaInstance(const FactorGraph& graph, std::span<const cplx> y,
                         std::span<const double> component_alphabet)
    : graph_(&graph),
      y_(y.begin(), y.end()),
      alphabet_(component_alphabet.begin(), component_alphabet.end()),
      asize_(static_cast<int>(component_alphabet.size())) {
  if (y_.size() != graph.factor_count)
    throw std::invalid_argument("spa: observation length differs from factor count");
  if (asize_ < 1) throw std::invalid_argument("spa: empty component alphabet");
  const double uniform = 1.0 / asize_;
  f2v_.assign(graph.edge_count() * asize_, uniform);
  v2f_.assign(graph.edge_count() * asize_, uniform);
}

void SpaInstance::normalize(double* msg) {
  double sum = 0.0;
  for (int a = 0; a < asize_; ++a) sum += msg[a];
  if (sum <= 0.0 || !std::isfinite(sum)) {
    ++underflows_;
    for (int a = 0; a < asize_; ++a) msg[a] = 1.0 / asize_;
    return;
  }
  bool floored = false;
  for (int a = 0; a < asize_; ++a) {
    msg[a] /= sum;
    if (msg[a] < 1e-300) {
      msg[a] = 1e-12;
      floored = true;
    }
  }
  if (floored) {
    ++underflows_;
    sum = 0.0;
    for (int a = 0; a < asize_; ++a) sum += msg[a];
    for (int a = 0; a < asize_; ++a) msg[a] /= sum;
  }
}

void SpaInstance::factor_to_variable_pass() {
  const FactorGraph& g = *graph_;
  scratch_.assign(f2v_.size(), 0.0);

  std::vector<cplx> contrib;   // per (slot, alphabet value) edge contribution
  std::vector<double> kernel;  // per joint assignment
  std::vector<std::size_t> pow_a;

  for (std::size_t i = 0; i < g.factor_count; ++i) {
    const std::vector<int>& edges = g.factor_edges[i];
    const int deg = static_cast<int>(edges.size());
    if (deg == 0) continue;

    contrib.assign(static_cast<std::size_t>(deg) * asize_, cplx{});
    for (int t = 0; t < deg; ++t) {
      const cplx w = g.edge_weight[edges[t]];
      for (int a = 0; a < asize_; ++a) {
        contrib[t * asize_ + a] = w * alphabet_[a];
        ++mults_;
      }
    }

    pow_a.assign(deg + 1, 1);
    for (int t = 0; t < deg; ++t) pow_a[t + 1] = pow_a[t] * asize_;
    const std::size_t n_assign = pow_a[deg];

    // Gaussian kernel for every joint assignment of the factor's variables.
    kernel.assign(n_assign, 0.0);
    for (std::size_t idx = 0; idx < n_assign; ++idx) {
      cplx r = y_[i];
      std::size_t rem = idx;
      for (int t = 0; t < deg; ++t) {
        r -= contrib[t * asize_ + static_cast<int>(rem % asize_)];
        rem /= asize_;
      }
      kernel[idx] = std::exp(-std::norm(r));
      ++kernel_evals_;
      ++mults_;  // |r|^2
    }

    // Each assignment contributes to the outgoing message of every slot,
    // weighted by the incoming messages of the other slots.
    for (int t = 0; t < deg; ++t) {
      double* out = scratch_.data() + static_cast<std::size_t>(edges[t]) * asize_;
      for (std::size_t idx = 0; idx < n_assign; ++idx) {
        double term = kernel[idx];
        std::size_t rem = idx;
        int own_value = 0;
        for (int u = 0; u < deg; ++u) {
          const int digit = static_cast<int>(rem % asize_);
          rem /= asize_;
          if (u == t) {
            own_value = digit;
            continue;
          }
          term *= v2f_[static_cast<std::size_t>(edges[u]) * asize_ + digit];
          ++mults_;
        }
        out[own_value] += term;
      }
      normalize(out);
    }
  }

  f2v_.swap(scratch_);
  ++iteration_;
  if (debug_) dump_f2v();
}

void SpaInstance::variable_to_factor_pass() {
  const FactorGraph& g = *graph_;
  scratch_.assign(v2f_.size(), 0.0);

  for (std::size_t j = 0; j < g.variable_count; ++j) {
    const std::vector<int>& edges = g.variable_edges[j];
    const int deg = static_cast<int>(edges.size());
    for (int t = 0; t < deg; ++t) {
      double* out = scratch_.data() + static_cast<std::size_t>(edges[t]) * asize_;
      for (int a = 0; a < asize_; ++a) {
        double prod = 1.0;
        for (int u = 0; u < deg; ++u) {
          if (u == t) continue;
          prod *= f2v_[static_cast<std::size_t>(edges[u]) * asize_ + a];
          ++mults_;
        }
        out[a] = prod;
      }
      normalize(out);
    }
  }

  v2f_.swap(scratch_);
}

void SpaInstance::iterate(int tau) {
  if (tau < 1) throw std::invalid_argument("spa: iteration count must be >= 1");
  for (int t = 0; t < tau; ++t) {
    factor_to_variable_pass();
    variable_to_factor_pass();
  }
}

Marginals SpaInstance::marginals() const {
  const FactorGraph& g = *graph_;
  Marginals m(g.variable_count, std::vector<double>(asize_, 1.0));
  for (std::size_t j = 0; j < g.variable_count; ++j) {
    for (int e : g.variable_edges[j])
      for (int a = 0; a < asize_; ++a)
        m[j][a] *= f2v_[static_cast<std::size_t>(e) * asize_ + a];
    double sum = 0.0;
    for (double v : m[j]) sum += v;
    if (sum <= 0.0 || !std::isfinite(sum)) {
      std::fill(m[j].begin(), m[j].end(), 1.0 / asize_);
    } else {
      for (double& v : m[j]) v /= sum;
    }
  }
  return m;
}

std::span<const double> SpaInstance::f2v_message(int edge) const {
  return {f2v_.data() + static_cast<std::size_t>(edge) * asize_,
          static_cast<std::size_t>(asize_)};
}

std::span<const double> SpaInstance::v2f_message(int edge) const {
  return {v2f_.data() + static_cast<std::size_t>(edge) * asize_,
          static_cast<std::size_t>(asize_)};
}

void SpaInstance::set_v2f_message(int edge, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(asize_))
    throw std::invalid_argument("spa: message table size differs from alphabet");
  std::copy(values.begin(), values.end(),
            v2f_.begin() + static_cast<std::size_t>(edge) * asize_);
}

void SpaInstance::dump_f2v() {
  for (std::size_t e = 0; e < graph_->edge_count(); ++e)
    for (int a = 0; a < asize_; ++a)
      *debug_ << e << ',' << iteration_ << ',' << a << ','
              << f2v_[e * asize_ + a] << '\n';
}

namespace {

Marginals run_component(std::span<const cplx> y, const CMat& coeffs,
                        std::span<const double> alphabet, int tau,
                        std::uint64_t& mults, std::uint64_t& underflows) {
  const FactorGraph graph = build_factor_graph(coeffs);
  SpaInstance inst(graph, y, alphabet);
  inst.iterate(tau);
  mults += inst.multiplications();
  underflows += inst.underflow_events();
  return inst.marginals();
}

}  // namespace

SpaResult run_spa(const ReceivedSignal& y, const EquivalentMatrices& eq,
                  const SymbolAlphabet& alphabet, int tau) {
  return run_spa_separated(y, y, eq, alphabet, tau);
}

SpaResult run_spa_separated(const ReceivedSignal& y_in_phase,
                            const ReceivedSignal& y_quadrature,
                            const EquivalentMatrices& eq,
                            const SymbolAlphabet& alphabet, int tau) {
  if (tau < 1) throw std::invalid_argument("spa: iteration count must be >= 1");
  if (y_in_phase.samples.size() != eq.in_phase.rows() ||
      y_quadrature.samples.size() != eq.quadrature.rows())
    throw std::invalid_argument("spa: observation length differs from Psi rows");

  CMat coeff_q = eq.quadrature;
  coeff_q *= cplx(0.0, 1.0);  // the quadrature kernel uses j * Psi_Q

  SpaResult res;
  res.in_phase = run_component(y_in_phase.samples, eq.in_phase,
                               alphabet.component_i, tau, res.multiplications,
                               res.underflow_events);
  res.quadrature = run_component(y_quadrature.samples, coeff_q,
                                 alphabet.component_q, tau, res.multiplications,
                                 res.underflow_events);
  return res;
}

namespace {

int argmax_first(const std::vector<double>& v) {
  int best = 0;
  for (std::size_t a = 1; a < v.size(); ++a)
    if (v[a] > v[best]) best = static_cast<int>(a);
  return best;
}

}  // namespace

DataFrame map_decide(const Marginals& in_phase, const Marginals& quadrature,
                     const SymbolAlphabet& alphabet) {
  if (in_phase.size() != quadrature.size())
    throw std::invalid_argument("map_decide: component marginal counts disagree");
  DataFrame frame;
  frame.symbols.resize(in_phase.size());
  for (std::size_t j = 0; j < in_phase.size(); ++j)
    frame.symbols[j] = {alphabet.component_i[argmax_first(in_phase[j])],
                        alphabet.component_q[argmax_first(quadrature[j])]};
  frame.source_bits = demap_frame(frame, alphabet);
  return frame;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("complexity estimate overflows 64-bit integers");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("complexity estimate overflows 64-bit integers");
  return r;
}

}  // namespace

std::int64_t complexity_formula(std::int64_t n, std::int64_t k, std::int64_t j,
                                int tau) {
  if (n < 1 || k < 1 || j < 2 || tau < 1)
    throw std::invalid_argument("complexity formula: arguments out of range");

  const std::int64_t half_j = j / 2;
  const std::int64_t n2 = checked_mul(n, n);
  const std::int64_t n3 = checked_mul(n2, n);

  // 8N^3 - 4N^2 K - 8N^2 + 2NK + 2N
  std::int64_t poly = checked_mul(8, n3);
  poly = checked_add(poly, -checked_mul(4, checked_mul(n2, k)));
  poly = checked_add(poly, -checked_mul(8, n2));
  poly = checked_add(poly, checked_mul(2, checked_mul(n, k)));
  poly = checked_add(poly, checked_mul(2, n));

  std::int64_t pow_term = 1;
  for (std::int64_t e = 0; e < n - 1; ++e) pow_term = checked_mul(pow_term, half_j);

  // + 2N^3 - 8N^2 + 6N
  std::int64_t tail = checked_mul(2, n3);
  tail = checked_add(tail, -checked_mul(8, n2));
  tail = checked_add(tail, checked_mul(6, n));

  return checked_mul(checked_add(checked_mul(poly, pow_term), tail),
                     static_cast<std::int64_t>(tau));
}

std::int64_t complexity_estimate(const WaveformParams& params, int tau) {
  params.validate();
  return complexity_formula(params.frame_symbols(), params.subcarriers,
                            params.mod_order, tau);
}

}  // namespace lgfdm

