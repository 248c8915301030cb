#pragma once

#include "girthgen/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace girthgen {

/// Dense n x n real matrix, row-major, kept symmetric by its producers.
class DenseSymMatrix {
public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(std::size_t n, double fill = 0.0);

  static DenseSymMatrix identity(std::size_t n);
  static DenseSymMatrix adjacency(const Graph &g);

  std::size_t dim() const { return n_; }

  double &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  std::span<const double> data() const { return data_; }

  /// Replaces every pair of mirrored entries by their mean.
  void symmetrize();
  double max_asymmetry() const;

  /// Product this * rhs. Only meaningful as a DenseSymMatrix when the two
  /// factors commute (e.g. powers of one symmetric matrix); the result is
  /// symmetrized.
  DenseSymMatrix commuting_product(const DenseSymMatrix &rhs) const;

  DenseSymMatrix &operator+=(const DenseSymMatrix &rhs);

  /// Largest |a - b| over all entries.
  friend double max_abs_diff(const DenseSymMatrix &a, const DenseSymMatrix &b);

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Cached walk-count matrices A, A^2, ..., A^(k-1) of a growing graph.
///
/// Entries are walk counts stored as doubles; they stay exact while below
/// 2^53. add_edge refreshes every power in O(k^2 n^2).
class PowerCache {
public:
  /// Cache for the empty graph on n vertices. Requires k >= 2.
  PowerCache(std::size_t n, int k);

  /// Cache for `g`, built by repeated dense multiplication.
  static PowerCache from_graph(const Graph &g, int k);

  std::size_t dim() const { return n_; }
  int girth_parameter() const { return k_; }
  /// Number of edges added since construction (plus those of the seed graph).
  std::size_t edge_count() const { return edges_; }

  /// A^r for 1 <= r <= k - 1.
  const DenseSymMatrix &power(int r) const { return powers_.at(static_cast<std::size_t>(r - 1)); }
  int max_power() const { return k_ - 1; }
  /// A^r 1, kept in step with power(r).
  const std::vector<double> &row_sums(int r) const { return row_sums_.at(static_cast<std::size_t>(r - 1)); }

  bool has_edge(Vertex i, Vertex j) const { return power(1)(i, j) > 0.5; }

  /// Adds edge (i, j) and updates all powers through the telescoping sum
  /// A'^r - A^r = sum_{s<r} A'^s D A^(r-1-s), D = e_i e_j^T + e_j e_i^T.
  /// Throws std::invalid_argument if the edge is present or i == j.
  void add_edge(Vertex i, Vertex j);

private:
  std::size_t n_;
  int k_;
  std::size_t edges_ = 0;
  std::vector<DenseSymMatrix> powers_;
  std::vector<std::vector<double>> row_sums_;
};

/// Free-function form of PowerCache::add_edge.
PowerCache apply_edge_update(PowerCache cache, Edge edge);

/// 0/1 symmetric matrix over vertex pairs. Only the upper triangle is
/// stored; (i, j) and (j, i) name the same bit.
class PairMask {
public:
  explicit PairMask(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t dim() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[index(i, j)] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { bits_[index(i, j)] = v; }
  /// Number of unordered pairs set.
  std::size_t count() const;

private:
  std::size_t index(std::size_t i, std::size_t j) const { return i < j ? i * n_ + j : j * n_ + i; }

  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

/// Pairs (i, j), i != j, joined by no walk of length <= k - 1, i.e. whose
/// hop distance is at least k. Existing edges are never suitable.
PairMask suitable_mask(const PowerCache &cache);

/// sum_{a=2}^{k-1} X^a with X = M + q (J - I - M), by direct multiplication.
/// Zero matrix for k = 2.
DenseSymMatrix exponent_matrix_naive(const PowerCache &cache, double q);

/// Same quantity as exponent_matrix_naive, evaluated from the cached powers of
/// M in O(k^2 n^2).
///
/// Writing X = B + q 1 1^T with B = (1 - q) M - q I, every power X^a equals
/// B^a plus a combination of outer products w_s w_t^T, where w_s = B^s 1.
/// B^a and w_s expand binomially into cached powers of M and their row sums,
/// and the outer-product coefficients follow a k x k recursion in a.
DenseSymMatrix exponent_matrix_affine(const PowerCache &cache, double q);

/// Entry-wise form of exponent_matrix_affine. Setup costs O(k^2 n); each
/// entry then costs O(k). Entries are symmetric by construction. Holds a
/// reference to `cache`.
class AffineExponent {
public:
  AffineExponent(const PowerCache &cache, double q);

  double operator()(std::size_t i, std::size_t j) const;
  /// Writes entries (i, from) .. (i, n - 1) into out[0] .. out[n - 1 - from].
  void fill_row(std::size_t i, std::size_t from, std::span<double> out) const;

private:
  const PowerCache *cache_;
  /// Weight of M^s, s = 0..k-1 (empty when k <= 2).
  std::vector<double> gamma_;
  /// Low-rank terms: entry (i, j) gains w[i] z[j] + z[i] w[j].
  std::vector<std::vector<double>> w_;
  std::vector<std::vector<double>> z_;
};

} // namespace girthgen
