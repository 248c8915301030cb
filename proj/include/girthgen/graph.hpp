#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace girthgen {

using Vertex = std::uint32_t;

/// Largest vertex count accepted by validated configurations.
inline constexpr std::size_t kMaxVertices = 100000;
/// Largest girth parameter accepted by validated configurations.
inline constexpr int kMaxGirthParameter = 10;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Hop count or girth value that may be infinite.
///
/// Infinite compares greater than every finite value.
class Length {
public:
  static constexpr Length infinite() { return Length(); }
  static constexpr Length finite(std::size_t v) { return Length(v); }

  constexpr bool is_finite() const { return value_.has_value(); }
  constexpr bool is_infinite() const { return !value_.has_value(); }

  /// Precondition: is_finite().
  std::size_t value() const { return value_.value(); }

  friend constexpr bool operator==(const Length &, const Length &) = default;
  friend constexpr std::strong_ordering operator<=>(const Length &a, const Length &b) {
    if (a.is_finite() && b.is_finite()) {
      return *a.value_ <=> *b.value_;
    }
    if (a.is_finite()) return std::strong_ordering::less;
    if (b.is_finite()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// True iff this length strictly exceeds k (always true when infinite).
  constexpr bool exceeds(std::size_t k) const { return !value_ || *value_ > k; }

private:
  constexpr Length() = default;
  constexpr explicit Length(std::size_t v) : value_(v) {}
  std::optional<std::size_t> value_;
};

using GirthResult = Length;

/// Simple undirected graph on vertices 0..n-1.
///
/// Adjacency is kept as sorted neighbor lists. add_edge rejects self-loops,
/// parallel edges and out-of-range endpoints with std::invalid_argument.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const { return adjacency_.size(); }
  std::size_t size() const { return edge_count_; }

  bool has_edge(Vertex a, Vertex b) const;
  void add_edge(Vertex a, Vertex b);

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  /// Edges in lexicographic order, each with u < v.
  std::vector<Edge> edges() const;

  /// Row-major n*n 0/1 adjacency matrix.
  std::vector<std::uint8_t> adjacency_matrix() const;

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.adjacency_ == b.adjacency_;
  }

private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Length of the shortest cycle; infinite for forests.
GirthResult girth(const Graph &g);

/// Breadth-first hop counts from `source`.
std::vector<Length> distances_from(const Graph &g, Vertex source);

/// Hop distance between two vertices, exploring at most `limit` levels.
/// Returns infinite when `target` is farther than `limit`.
Length bounded_distance(const Graph &g, Vertex source, Vertex target, std::size_t limit);

/// Counts of cycles in the complete graph on g's vertices that pass through
/// `pair`, indexed by length r and by how many of their other edges lie in g.
class CycleTable {
public:
  CycleTable(int max_length);

  int max_length() const { return max_length_; }
  /// Precondition: 3 <= r <= max_length, 0 <= other_edges <= r - 1.
  std::uint64_t at(int r, int other_edges) const;
  std::uint64_t &at(int r, int other_edges);
  /// Total number of length-r cycles through the pair.
  std::uint64_t total(int r) const;

private:
  int max_length_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

/// Enumerates the simple cycles of length 3..k through `pair` in the complete
/// graph, bucketed by the number of edges they share with g besides `pair`.
/// Rejects k < 3 and k > kMaxGirthParameter.
CycleTable count_simple_cycles_through(const Graph &g, Edge pair, int k);

/// Number of simple cycles of length r in the complete graph K_n,
/// C(n, r) * (r - 1)! / 2. Zero when r > n. Throws std::overflow_error when the
/// value does not fit 64 bits; use log_count_cycles_complete for large n.
std::uint64_t count_cycles_complete(std::size_t n, std::size_t r);

/// Natural log of count_cycles_complete(n, r); -infinity when r > n.
double log_count_cycles_complete(std::size_t n, std::size_t r);

/// Writes "n m" then one "i j" line per edge (i < j, sorted).
void write_edge_list(std::ostream &out, const Graph &g);

/// Parses the format written by write_edge_list. Throws ParseError.
Graph read_edge_list(std::istream &in);

} // namespace girthgen
