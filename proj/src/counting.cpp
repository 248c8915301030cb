#include "girthgen/counting.hpp"

#include "girthgen/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace girthgen {

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

double cycle_correction(std::size_t n, double p, int k) {
  if (p <= 0.0) {
    return 0.0;
  }
  const double log_p = std::log(p);
  double total = 0.0;
  for (int r = 3; r <= k; ++r) {
    if (static_cast<std::size_t>(r) > n) {
      break;
    }
    total += std::exp(log_count_cycles_complete(n, r) + r * log_p);
  }
  return total;
}

} // namespace

CountEstimate janson_log_count(std::size_t n, std::size_t m, int k) {
  if (n < 2) {
    throw std::invalid_argument("janson_log_count: n must be at least 2");
  }
  if (k < 2 || k > kMaxGirthParameter) {
    throw std::invalid_argument("janson_log_count: k must be in [2, 10]");
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (static_cast<double>(m) > pairs) {
    throw std::invalid_argument("janson_log_count: m exceeds n(n-1)/2");
  }
  CountEstimate est;
  est.log_binom = log_binomial(pairs, static_cast<double>(m));
  est.correction = cycle_correction(n, static_cast<double>(m) / pairs, k);
  est.log_count = est.log_binom - est.correction;
  est.alpha = m == 0 ? -std::numeric_limits<double>::infinity()
                     : std::log(static_cast<double>(m)) / std::log(static_cast<double>(n)) - 1.0;
  est.regime_ok = est.alpha < 1.0 / (2.0 * k - 1.0);
  est.sampler_regime_ok = est.alpha <= 1.0 / (2.0 * k * (k + 3.0));
  return est;
}

double gnp_girth_probability(std::size_t n, double p, int k) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("gnp_girth_probability: p must be in [0, 1]");
  }
  if (k < 2 || k > kMaxGirthParameter) {
    throw std::invalid_argument("gnp_girth_probability: k must be in [2, 10]");
  }
  return std::exp(-cycle_correction(n, p, k));
}

JansonBound janson_bound(std::span<const double> event_probabilities, double gamma) {
  if (gamma < 0.0) {
    throw std::invalid_argument("janson_bound: gamma must be non-negative");
  }
  JansonBound b;
  b.gamma = gamma;
  double log_lower = 0.0;
  for (double p : event_probabilities) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw std::invalid_argument("janson_bound: event probabilities must lie in [0, 1)");
    }
    b.beta = std::max(b.beta, p);
    log_lower += std::log1p(-p);
  }
  b.lower = std::exp(log_lower);
  b.upper = std::min(1.0, std::exp(log_lower + gamma / (2.0 * (1.0 - b.beta))));
  return b;
}

namespace {

using Mask = std::uint64_t;

// True when i and j are joined by a path of length < k in the graph given by
// bitmask adjacency `adj`, i.e. when edge (i, j) would close a cycle of
// length <= k.
bool closes_short_cycle(const std::vector<Mask> &adj, std::size_t i, std::size_t j, int k) {
  Mask reach = Mask{1} << i;
  Mask frontier = reach;
  const Mask target = Mask{1} << j;
  for (int depth = 1; depth < k && frontier; ++depth) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) {
      next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
    }
    if (next & target) {
      return true;
    }
    frontier = next & ~reach;
    reach |= next;
  }
  return false;
}

struct SubsetWalker {
  std::size_t m;
  int k;
  const std::vector<Edge> &pairs;
  const EdgeSetVisitor &visit;
  std::vector<Mask> adj;
  std::vector<Edge> chosen;
  std::uint64_t count = 0;

  void run(std::size_t from) {
    if (chosen.size() == m) {
      ++count;
      if (visit) {
        visit(chosen);
      }
      return;
    }
    const std::size_t need = m - chosen.size();
    for (std::size_t p = from; p + need <= pairs.size(); ++p) {
      const Edge e = pairs[p];
      if (k >= 3 && closes_short_cycle(adj, e.u, e.v, k)) {
        continue;
      }
      adj[e.u] |= Mask{1} << e.v;
      adj[e.v] |= Mask{1} << e.u;
      chosen.push_back(e);
      run(p + 1);
      chosen.pop_back();
      adj[e.u] &= ~(Mask{1} << e.v);
      adj[e.v] &= ~(Mask{1} << e.u);
    }
  }
};

std::vector<Edge> all_pairs(std::size_t n) {
  std::vector<Edge> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

} // namespace

ExactCount exact_enumerate(std::size_t n, std::size_t m, int k, double budget,
                           const EdgeSetVisitor &visit) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("exact_enumerate: n must be in [1, 64]");
  }
  if (k < 2 || k > kMaxGirthParameter) {
    throw std::invalid_argument("exact_enumerate: k must be in [2, 10]");
  }
  const std::size_t pair_count = n * (n - 1) / 2;
  ExactCount result;
  if (m > pair_count) {
    return result;
  }
  result.candidates = std::round(std::exp(log_binomial(static_cast<double>(pair_count),
                                                       static_cast<double>(m))));
  if (result.candidates > budget) {
    throw BudgetExceeded("enumeration budget exceeded: C(N, m) = " +
                             std::to_string(result.candidates) + " > " + std::to_string(budget),
                         result.candidates, budget);
  }
  const std::vector<Edge> pairs = all_pairs(n);
  SubsetWalker walker{m, k, pairs, visit, std::vector<Mask>(n, 0), {}};
  walker.chosen.reserve(m);
  walker.run(0);
  result.count = walker.count;
  return result;
}

RejectionResult rejection_sample(std::size_t n, std::size_t m, int k, Rng &rng,
                                 std::size_t max_attempts) {
  if (n < 2 || n > kMaxVertices) {
    throw std::invalid_argument("rejection_sample: n out of range");
  }
  const std::size_t pair_count = n * (n - 1) / 2;
  if (m > pair_count) {
    throw std::invalid_argument("rejection_sample: m exceeds n(n-1)/2");
  }
  std::vector<std::size_t> picked;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    // Floyd's algorithm: a uniform m-subset of {0, ..., N-1}.
    picked.clear();
    for (std::size_t j = pair_count - m; j < pair_count; ++j) {
      const std::size_t t = rng.below(j + 1);
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
        picked.push_back(t);
      } else {
        picked.push_back(j);
      }
    }
    Graph g(n);
    for (std::size_t idx : picked) {
      // Row-major index of pair (i, j), i < j.
      std::size_t i = 0;
      std::size_t rest = idx;
      while (rest >= n - 1 - i) {
        rest -= n - 1 - i;
        ++i;
      }
      g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1 + rest));
    }
    if (girth(g).exceeds(static_cast<std::size_t>(std::max(k, 2)))) {
      return RejectionResult{std::move(g), attempt};
    }
  }
  throw BudgetExceeded("rejection_sample: no acceptable graph in " +
                           std::to_string(max_attempts) + " attempts",
                       static_cast<double>(max_attempts), static_cast<double>(max_attempts));
}

namespace {

struct BipartiteWalker {
  const DegreeSequence &deg;
  int k;
  const std::function<void(const Graph &)> &visit;
  std::size_t n;
  std::size_t m2;
  std::vector<Mask> adj;
  std::vector<std::size_t> col_left;
  std::uint64_t count = 0;

  void emit() {
    ++count;
    if (!visit) {
      return;
    }
    Graph g(n + m2);
    for (std::size_t i = 0; i < n; ++i) {
      for (Mask f = adj[i]; f; f &= f - 1) {
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(std::countr_zero(f)));
      }
    }
    visit(g);
  }

  // Fill row `i` choosing right vertices >= `from`, `left` still needed.
  void row(std::size_t i, std::size_t from, std::size_t left) {
    if (left == 0) {
      if (i + 1 == n) {
        emit();
      } else {
        row(i + 1, 0, deg.left[i + 1]);
      }
      return;
    }
    for (std::size_t j = from; j + left <= m2; ++j) {
      if (col_left[j] == 0) {
        continue;
      }
      const std::size_t v = n + j;
      if (closes_short_cycle(adj, i, v, k)) {
        continue;
      }
      adj[i] |= Mask{1} << v;
      adj[v] |= Mask{1} << i;
      --col_left[j];
      row(i, j + 1, left - 1);
      ++col_left[j];
      adj[i] &= ~(Mask{1} << v);
      adj[v] &= ~(Mask{1} << i);
    }
  }
};

} // namespace

std::uint64_t enumerate_bipartite(const DegreeSequence &deg, int k, double budget,
                                  const std::function<void(const Graph &)> &visit) {
  const std::size_t n = deg.left.size();
  const std::size_t m2 = deg.right.size();
  if (n == 0 || m2 == 0 || n + m2 > 64) {
    throw std::invalid_argument("enumerate_bipartite: needs 1..64 vertices in total");
  }
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("enumerate_bipartite: k must be even and >= 2");
  }
  double log_space = 0.0;
  for (std::size_t r : deg.left) {
    log_space += log_binomial(static_cast<double>(m2), static_cast<double>(r));
  }
  const double space = std::exp(log_space);
  if (space > budget) {
    throw BudgetExceeded("bipartite enumeration budget exceeded", space, budget);
  }
  // Equal sums make every completed row assignment fill each column exactly.
  if (deg.edge_total() != std::accumulate(deg.right.begin(), deg.right.end(), std::size_t{0})) {
    return 0;
  }
  BipartiteWalker walker{deg, k, visit, n, m2, std::vector<Mask>(n + m2, 0), deg.right};
  walker.row(0, 0, deg.left[0]);
  return walker.count;
}

RejectionResult bip_rejection_sample(const DegreeSequence &deg, int k, Rng &rng,
                                     std::size_t max_attempts) {
  const std::size_t n = deg.left.size();
  const std::size_t m2 = deg.right.size();
  std::vector<Vertex> left_stubs;
  std::vector<Vertex> right_stubs;
  for (std::size_t i = 0; i < n; ++i) {
    left_stubs.insert(left_stubs.end(), deg.left[i], static_cast<Vertex>(i));
  }
  for (std::size_t j = 0; j < m2; ++j) {
    right_stubs.insert(right_stubs.end(), deg.right[j], static_cast<Vertex>(n + j));
  }
  if (left_stubs.size() != right_stubs.size()) {
    throw DegreeSumMismatch(left_stubs.size(), right_stubs.size());
  }
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    for (std::size_t s = right_stubs.size(); s > 1; --s) {
      std::swap(right_stubs[s - 1], right_stubs[rng.below(s)]);
    }
    Graph g(n + m2);
    bool simple = true;
    for (std::size_t s = 0; s < left_stubs.size() && simple; ++s) {
      if (g.has_edge(left_stubs[s], right_stubs[s])) {
        simple = false;
      } else {
        g.add_edge(left_stubs[s], right_stubs[s]);
      }
    }
    if (simple && girth(g).exceeds(static_cast<std::size_t>(k))) {
      return RejectionResult{std::move(g), attempt};
    }
  }
  throw BudgetExceeded("bip_rejection_sample: no acceptable graph in " +
                           std::to_string(max_attempts) + " attempts",
                       static_cast<double>(max_attempts), static_cast<double>(max_attempts));
}

} // namespace girthgen
