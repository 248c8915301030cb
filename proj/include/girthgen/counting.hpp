#pragma once

#include "girthgen/bipartite.hpp"
#include "girthgen/graph.hpp"
#include "girthgen/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace girthgen {

/// ln C(n, k) via log-gamma; -infinity when k > n.
double log_binomial(double n, double k);

/// Poisson estimate of |G(n, m, k)|, the number of labeled graphs with n
/// vertices, m edges and girth > k:
///   ln|G| ~ ln C(N, m) - sum_{r=3}^{k} |C_r| (m/N)^r.
struct CountEstimate {
  double log_count = 0.0;
  double log_binom = 0.0;
  /// sum_{r=3}^{k} |C_r| p^r with p = m/N.
  double correction = 0.0;
  /// alpha = log_n(m) - 1.
  double alpha = 0.0;
  /// alpha < 1/(2k - 1), where the estimate is known to be asymptotically exact.
  bool regime_ok = false;
  /// alpha <= 1/(2k(k + 3)), where the sequential sampler is proven uniform.
  bool sampler_regime_ok = false;
};

/// Accepts k >= 2 (k = 2 gives the unconstrained count C(N, m)).
CountEstimate janson_log_count(std::size_t n, std::size_t m, int k);

/// exp(-sum_{r=3}^{k} |C_r| p^r): Poisson approximation to the probability
/// that G(n, p) has girth > k.
double gnp_girth_probability(std::size_t n, double p, int k);

/// Janson's bounds on the probability that none of a family of bad events
/// occurs: prod P(B_i^c) <= P(no B_i) <= prod P(B_i^c) exp(gamma / (2(1 - beta))).
struct JansonBound {
  double lower = 0.0;
  double upper = 0.0;
  /// Largest single-event probability.
  double beta = 0.0;
  /// Sum of P(B_i & B_j) over dependent ordered pairs.
  double gamma = 0.0;
};

/// Throws std::invalid_argument when some probability is outside [0, 1) or
/// gamma is negative.
JansonBound janson_bound(std::span<const double> event_probabilities, double gamma);

/// Default cap on C(N, m) for exhaustive enumeration.
inline constexpr double kDefaultEnumerationBudget = 1e8;

struct ExactCount {
  std::uint64_t count = 0;
  /// C(N, m), the number of candidate edge sets.
  double candidates = 0.0;
};

using EdgeSetVisitor = std::function<void(std::span<const Edge>)>;

/// Counts the m-subsets of vertex pairs whose graph has girth > k. Subsets are
/// visited in lexicographic order; a prefix that already closes a short cycle
/// is abandoned. `visit`, when set, receives each member's sorted edge list.
/// Throws BudgetExceeded when C(N, m) exceeds `budget`.
ExactCount exact_enumerate(std::size_t n, std::size_t m, int k,
                           double budget = kDefaultEnumerationBudget,
                           const EdgeSetVisitor &visit = {});

struct RejectionResult {
  Graph graph;
  std::size_t attempts = 0;
};

/// Draws uniform m-subsets of pairs until one has girth > k. Exactly uniform
/// on G(n, m, k). Throws BudgetExceeded after `max_attempts` rejections.
RejectionResult rejection_sample(std::size_t n, std::size_t m, int k, Rng &rng,
                                 std::size_t max_attempts = 1000000);

/// Counts simple bipartite graphs realizing `deg` with girth > k (combined
/// numbering, left side first). Throws BudgetExceeded when the product of
/// per-row choices exceeds `budget`.
std::uint64_t enumerate_bipartite(const DegreeSequence &deg, int k,
                                  double budget = kDefaultEnumerationBudget,
                                  const std::function<void(const Graph &)> &visit = {});

/// Configuration-model rejection sampler: uniform half-edge matchings,
/// rejecting multi-edges and cycles of length <= k. Exactly uniform over the
/// simple realizations with girth > k.
RejectionResult bip_rejection_sample(const DegreeSequence &deg, int k, Rng &rng,
                                     std::size_t max_attempts = 1000000);

} // namespace girthgen
