#pragma once

#include "girthgen/graph.hpp"
#include "girthgen/matrix.hpp"
#include "girthgen/rng.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace girthgen {

/// Instance of the girth-constrained sampling problem: n vertices, m edges,
/// every cycle longer than k. k = 2 is a degenerate mode (no constraint).
struct SamplerParams {
  std::size_t n = 0;
  std::size_t m = 0;
  int k = 3;

  std::size_t pair_count() const { return n * (n - 1) / 2; }
};

/// Throws std::invalid_argument unless 2 <= n <= kMaxVertices, m <= n(n-1)/2
/// and 2 <= k <= kMaxGirthParameter.
void validate(const SamplerParams &p);

/// Edge count n^(1 + 1/(2k(k+3))) up to which uniformity is proven.
double proven_edge_limit(std::size_t n, int k);

/// Warning text when m lies beyond proven_edge_limit, otherwise nullopt.
std::optional<std::string> regime_advisory(const SamplerParams &p);

/// Partial graph G_t plus the walk-count cache that drives the edge weights.
class SamplerState {
public:
  explicit SamplerState(const SamplerParams &params);

  const SamplerParams &params() const { return params_; }
  const Graph &graph() const { return graph_; }
  const PowerCache &cache() const { return cache_; }
  /// Edges placed so far.
  std::size_t step_index() const { return graph_.size(); }
  /// (m - t) / (N - t): chance that a remaining pair is an edge of a uniform
  /// completion.
  double q() const;

  /// Adds `e` to the graph and the cache. Throws if e is already present.
  void add_edge(Edge e);

private:
  friend std::optional<Edge> step(SamplerState &state, Rng &rng);

  SamplerParams params_;
  Graph graph_;
  PowerCache cache_;
  // Weight table of the previous step, reused to avoid a fresh allocation.
  std::vector<double> scratch_;
};

/// Edge distribution of one step: p(ij) proportional to exp(-E_ij) on the
/// suitable pairs, zero elsewhere.
///
/// Holds unnormalized weights for the pairs i < j, packed row by row, and
/// their sum.
class ProbabilityMatrix {
public:
  /// `weights` has n(n-1)/2 non-negative entries with positive sum `total`.
  ProbabilityMatrix(std::size_t n, std::vector<double> weights, double total, std::size_t support);

  std::size_t dim() const { return n_; }
  /// Probability of pair (i, j); symmetric, zero on the diagonal.
  double operator()(std::size_t i, std::size_t j) const;
  std::size_t support_size() const { return support_; }

  /// Unnormalized weights in the order (0,1), (0,2), ..., (n-2,n-1).
  const std::vector<double> &weights() const { return weights_; }
  double total() const { return total_; }
  std::vector<double> release_weights() && { return std::move(weights_); }

private:
  std::size_t n_;
  std::vector<double> weights_;
  double total_;
  std::size_t support_;
};

/// Step distribution for the current state. The exponents are shifted by
/// their minimum over the suitable pairs before exponentiation.
/// Throws NoSuitablePair when every pair is blocked.
ProbabilityMatrix probability_matrix(const SamplerState &state);

/// Draws one pair by a cumulative scan of the packed weights.
Edge sample_edge(const ProbabilityMatrix &p, Rng &rng);

/// Samples and adds one edge. Returns nullopt (FAIL) and leaves the state
/// untouched when no suitable pair exists. Precondition: t < m.
std::optional<Edge> step(SamplerState &state, Rng &rng);

/// FAIL marker: the step at which no suitable pair remained.
struct Failure {
  std::size_t step = 0;
};

/// Either a finished graph or the step at which the run failed.
class GenerationOutcome {
public:
  static GenerationOutcome success(Graph g) { return GenerationOutcome(std::move(g)); }
  static GenerationOutcome failure(std::size_t step) { return GenerationOutcome(Failure{step}); }

  bool succeeded() const { return std::holds_alternative<Graph>(result_); }
  /// Throws std::bad_variant_access on failure.
  const Graph &graph() const { return std::get<Graph>(result_); }
  Graph &graph() { return std::get<Graph>(result_); }
  /// Throws std::bad_variant_access on success.
  std::size_t failed_at() const { return std::get<Failure>(result_).step; }

  /// Set when the parameters lie outside the proven regime.
  std::optional<std::string> advisory;

private:
  explicit GenerationOutcome(std::variant<Graph, Failure> r) : result_(std::move(r)) {}
  std::variant<Graph, Failure> result_;
};

/// One full run of the sequential sampler.
GenerationOutcome generate(const SamplerParams &params, Rng &rng);

struct RetryResult {
  Graph graph;
  std::size_t attempts = 0;
  /// Step index of each failed attempt, in order.
  std::vector<std::size_t> failures;
  std::optional<std::string> advisory;
};

/// Restarts generate() on FAIL until success or `max_retries` attempts.
/// Throws RetriesExhausted.
RetryResult generate_with_retries(const SamplerParams &params, Rng &rng, std::size_t max_retries);

/// sum_{r=3}^{k} sum_{l=0}^{r-2} N_{r,l} q^(r-1-l): expected number of simple
/// cycles of length <= k through `pair` after completing G_t + pair uniformly.
/// Zero when k < 3.
double expected_simple_cycles(const SamplerState &state, Edge pair);

/// Mean wall time per step over the first `steps` steps of one run.
struct StepTiming {
  std::size_t n = 0;
  std::size_t steps = 0;
  double mean_step_ms = 0.0;
  bool failed = false;
};

StepTiming time_steps(const SamplerParams &params, std::uint64_t seed, std::size_t steps);

} // namespace girthgen
