#pragma once

#include "girthgen/graph.hpp"
#include "girthgen/rng.hpp"
#include "girthgen/sampler.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace girthgen {

/// Left/right degree sequences of a bipartite graph with equal sums.
struct DegreeSequence {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  std::size_t edge_total() const;
};

/// Left and right degree sums differ.
class DegreeSumMismatch : public std::invalid_argument {
public:
  DegreeSumMismatch(std::size_t left_sum, std::size_t right_sum);
  std::size_t left_sum() const { return left_sum_; }
  std::size_t right_sum() const { return right_sum_; }

private:
  std::size_t left_sum_;
  std::size_t right_sum_;
};

/// Builds a validated sequence. Throws DegreeSumMismatch, or
/// std::invalid_argument for empty sides and zero degrees.
DegreeSequence make_degree_sequence(std::vector<std::size_t> left, std::vector<std::size_t> right);

/// Gale-Ryser test: some simple bipartite graph realizes the sequence.
bool gale_ryser_feasible(const DegreeSequence &deg);

/// Default cap on cycles enumerated per anchor, (n m2)^(k/2-1).
inline constexpr double kDefaultCycleBudget = 1e8;

/// Left vertex index and right vertex index (both 0-based within their side).
struct BipPair {
  std::size_t left = 0;
  std::size_t right = 0;

  friend bool operator==(const BipPair &, const BipPair &) = default;
};

/// Partial bipartite graph and residual degrees.
///
/// Vertices are numbered left first: u_i is vertex i, v_j is vertex n + j.
class BipartiteState {
public:
  /// Requires k even and k >= 2.
  BipartiteState(DegreeSequence deg, int k);

  const DegreeSequence &degrees() const { return deg_; }
  int girth_parameter() const { return k_; }
  std::size_t left_count() const { return deg_.left.size(); }
  std::size_t right_count() const { return deg_.right.size(); }
  const Graph &graph() const { return graph_; }
  std::size_t step_index() const { return graph_.size(); }
  std::size_t edge_total() const { return total_; }

  Vertex left_vertex(std::size_t i) const { return static_cast<Vertex>(i); }
  Vertex right_vertex(std::size_t j) const { return static_cast<Vertex>(left_count() + j); }
  bool is_left(Vertex x) const { return x < left_count(); }

  std::size_t residual_left(std::size_t i) const { return residual_left_[i]; }
  std::size_t residual_right(std::size_t j) const { return residual_right_[j]; }
  /// Residual degree of a vertex in combined numbering.
  std::size_t residual(Vertex x) const;

  bool has_edge(BipPair p) const { return graph_.has_edge(left_vertex(p.left), right_vertex(p.right)); }

  /// Places an edge. Throws std::invalid_argument when it exists or a residual
  /// degree is exhausted.
  void add_edge(BipPair p);

private:
  DegreeSequence deg_;
  int k_;
  std::size_t total_;
  Graph graph_;
  std::vector<std::size_t> residual_left_;
  std::vector<std::size_t> residual_right_;
};

/// Pairs with positive residuals on both sides whose edge would close no
/// cycle of length <= k. Ordered by (left, right).
std::vector<BipPair> bip_suitable_pairs(const BipartiteState &state);

/// Configuration-model weight a(gamma, G_t, anchor) of one cycle through the
/// anchor:
///   (e - t - 2r + |gamma & G_t|)! / (e - t - 1)!  *  prod_x b(x)
/// where b(x) is 1, rho or rho(rho - 1) when two, one or none of x's cycle
/// edges lie in G_t + anchor, and rho is x's residual degree in G_t + anchor.
///
/// `gamma` lists the 2r cycle vertices in order (combined numbering); the
/// closing edge runs from the last vertex back to the first.
double cycle_weight(const BipartiteState &state, std::span<const Vertex> gamma, BipPair anchor);

/// Sum of cycle_weight over all simple cycles of length 4..k through the
/// anchor in the complete bipartite graph. Throws BudgetExceeded when
/// (n m2)^(k/2 - 1) is above `budget`.
double bip_exponent(const BipartiteState &state, BipPair anchor,
                    double budget = kDefaultCycleBudget);

/// Normalized step distribution q(u_i v_j) proportional to
/// r_i c_j exp(-E_k) over the suitable pairs.
struct BipProbability {
  std::vector<BipPair> pairs;
  std::vector<double> probabilities;
};

/// Throws NoSuitablePair when no pair is suitable.
BipProbability bip_probability(const BipartiteState &state, double budget = kDefaultCycleBudget);

/// Full run. The graph of a successful outcome has left vertices 0..n-1 and
/// right vertices n..n+m2-1. Throws std::invalid_argument for odd k.
GenerationOutcome bip_generate(const DegreeSequence &deg, int k, Rng &rng,
                               double budget = kDefaultCycleBudget);

/// alist export: header, max degrees, degree lists, then zero-padded
/// 1-indexed neighbor lists for each left and each right vertex.
void write_alist(std::ostream &out, const Graph &g, std::size_t left_count);

struct AlistGraph {
  Graph graph;
  std::size_t left_count = 0;
  std::size_t right_count = 0;
};

/// Parses write_alist output. Throws ParseError.
AlistGraph read_alist(std::istream &in);

} // namespace girthgen
