#include "girthgen/graph.hpp"

#include "girthgen/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace girthgen {

Graph::Graph(std::size_t n) : adjacency_(n) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
  for (const Edge &e : edges) {
    add_edge(e.u, e.v);
  }
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a >= order() || b >= order()) {
    return false;
  }
  const auto &small = adjacency_[a].size() <= adjacency_[b].size() ? adjacency_[a] : adjacency_[b];
  const Vertex other = adjacency_[a].size() <= adjacency_[b].size() ? b : a;
  return std::binary_search(small.begin(), small.end(), other);
}

void Graph::add_edge(Vertex a, Vertex b) {
  if (a >= order() || b >= order()) {
    throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                ") out of range for n=" + std::to_string(order()));
  }
  if (a == b) {
    throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
  }
  auto &na = adjacency_[a];
  auto pos = std::lower_bound(na.begin(), na.end(), b);
  if (pos != na.end() && *pos == b) {
    throw std::invalid_argument("parallel edge (" + std::to_string(a) + "," + std::to_string(b) +
                                ")");
  }
  na.insert(pos, b);
  auto &nb = adjacency_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++edge_count_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> Graph::adjacency_matrix() const {
  const std::size_t n = order();
  std::vector<std::uint8_t> a(n * n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : adjacency_[u]) {
      a[u * n + v] = 1;
    }
  }
  return a;
}

GirthResult girth(const Graph &g) {
  const std::size_t n = g.order();
  constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = unseen;
  std::vector<std::size_t> dist(n, unseen);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> queue;
  queue.reserve(n);

  for (Vertex root = 0; root < n && best > 3; ++root) {
    std::fill(dist.begin(), dist.end(), unseen);
    queue.clear();
    dist[root] = 0;
    parent[root] = root;
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      // Cycles found from deeper levels cannot beat the current best.
      if (2 * dist[x] + 1 >= best) {
        break;
      }
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == unseen) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  return best == unseen ? Length::infinite() : Length::finite(best);
}

std::vector<Length> distances_from(const Graph &g, Vertex source) {
  if (source >= g.order()) {
    throw std::invalid_argument("distances_from: source out of range");
  }
  constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.order(), unseen);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == unseen) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<Length> out;
  out.reserve(g.order());
  for (std::size_t d : dist) {
    out.push_back(d == unseen ? Length::infinite() : Length::finite(d));
  }
  return out;
}

Length bounded_distance(const Graph &g, Vertex source, Vertex target, std::size_t limit) {
  if (source == target) {
    return Length::finite(0);
  }
  std::vector<Vertex> frontier{source};
  std::vector<Vertex> next;
  std::vector<Vertex> seen{source};
  for (std::size_t depth = 1; depth <= limit && !frontier.empty(); ++depth) {
    next.clear();
    for (Vertex x : frontier) {
      for (Vertex y : g.neighbors(x)) {
        if (y == target) {
          return Length::finite(depth);
        }
        if (std::find(seen.begin(), seen.end(), y) == seen.end()) {
          seen.push_back(y);
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return Length::infinite();
}

CycleTable::CycleTable(int max_length) : max_length_(max_length), counts_(max_length + 1) {
  for (int r = 0; r <= max_length; ++r) {
    counts_[r].assign(static_cast<std::size_t>(std::max(r, 1)), 0);
  }
}

std::uint64_t CycleTable::at(int r, int other_edges) const {
  return counts_.at(r).at(other_edges);
}

std::uint64_t &CycleTable::at(int r, int other_edges) { return counts_.at(r).at(other_edges); }

std::uint64_t CycleTable::total(int r) const {
  std::uint64_t s = 0;
  for (auto c : counts_.at(r)) {
    s += c;
  }
  return s;
}

namespace {

struct CycleSearch {
  const Graph &g;
  Vertex start;
  int k;
  CycleTable &table;
  std::vector<char> on_path;

  // `length` counts vertices on the path start, second, ..., end.
  void extend(Vertex end, int length, int shared) {
    if (length >= 3) {
      table.at(length, shared + (g.has_edge(end, start) ? 1 : 0)) += 1;
    }
    if (length == k) {
      return;
    }
    for (Vertex x = 0; x < g.order(); ++x) {
      if (on_path[x]) {
        continue;
      }
      on_path[x] = 1;
      extend(x, length + 1, shared + (g.has_edge(end, x) ? 1 : 0));
      on_path[x] = 0;
    }
  }
};

} // namespace

CycleTable count_simple_cycles_through(const Graph &g, Edge pair, int k) {
  if (k < 3 || k > kMaxGirthParameter) {
    throw std::invalid_argument("count_simple_cycles_through: k must be in [3, 10]");
  }
  if (pair.u == pair.v || pair.v >= g.order()) {
    throw std::invalid_argument("count_simple_cycles_through: invalid pair");
  }
  CycleTable table(k);
  CycleSearch search{g, pair.u, k, table, std::vector<char>(g.order(), 0)};
  search.on_path[pair.u] = 1;
  search.on_path[pair.v] = 1;
  // Orienting every cycle as u -> v -> ... -> u visits it exactly once.
  search.extend(pair.v, 2, 0);
  return table;
}

std::uint64_t count_cycles_complete(std::size_t n, std::size_t r) {
  if (r < 3) {
    throw std::invalid_argument("count_cycles_complete: r must be at least 3");
  }
  if (r > n) {
    return 0;
  }
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    // result * (n - i) / (i + 1) is exact; divide first to delay overflow.
    const std::uint64_t g = std::gcd<std::uint64_t>(n - i, i + 1);
    result /= (i + 1) / g;
    if (__builtin_mul_overflow(result, (n - i) / g, &result)) {
      throw std::overflow_error("count_cycles_complete: result exceeds 64 bits");
    }
  }
  // (r - 1)! / 2 = 3 * 4 * ... * (r - 1)
  for (std::uint64_t f = 3; f < r; ++f) {
    if (__builtin_mul_overflow(result, f, &result)) {
      throw std::overflow_error("count_cycles_complete: result exceeds 64 bits");
    }
  }
  return result;
}

double log_count_cycles_complete(std::size_t n, std::size_t r) {
  if (r < 3) {
    throw std::invalid_argument("log_count_cycles_complete: r must be at least 3");
  }
  if (r > n) {
    return -std::numeric_limits<double>::infinity();
  }
  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  return std::lgamma(nd + 1.0) - std::lgamma(nd - rd + 1.0) - std::log(2.0 * rd);
}

void write_edge_list(std::ostream &out, const Graph &g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge &e : g.edges()) {
    out << e.u << ' ' << e.v << '\n';
  }
}

namespace {

std::vector<std::uint64_t> parse_integers(const std::string &line, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r') {
      ++pos;
      continue;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (ec != std::errc()) {
      throw ParseError("expected a non-negative integer", line_no, pos + 1);
    }
    const std::size_t end = static_cast<std::size_t>(ptr - line.data());
    if (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') {
      throw ParseError("unexpected character '" + std::string(1, line[end]) + "'", line_no,
                       end + 1);
    }
    values.push_back(v);
    pos = end;
  }
  return values;
}

} // namespace

Graph read_edge_list(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ParseError("empty input, expected header \"n m\"", 1);
  }
  ++line_no;
  const auto header = parse_integers(line, line_no);
  if (header.size() != 2) {
    throw ParseError("header must contain exactly two integers \"n m\"", line_no);
  }
  const std::uint64_t n = header[0];
  const std::uint64_t m = header[1];
  if (n == 0 || n > kMaxVertices) {
    throw ParseError("vertex count out of range", line_no, 1);
  }
  Graph g(n);
  for (std::uint64_t e = 0; e < m; ++e) {
    if (!std::getline(in, line)) {
      throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(e),
                       line_no + 1);
    }
    ++line_no;
    const auto pair = parse_integers(line, line_no);
    if (pair.size() != 2) {
      throw ParseError("edge line must contain exactly two integers \"i j\"", line_no);
    }
    if (pair[0] >= pair[1]) {
      throw ParseError("edge endpoints must satisfy i < j", line_no);
    }
    if (pair[1] >= n) {
      throw ParseError("vertex index out of range", line_no);
    }
    if (g.has_edge(pair[0], pair[1])) {
      throw ParseError("duplicate edge", line_no);
    }
    g.add_edge(static_cast<Vertex>(pair[0]), static_cast<Vertex>(pair[1]));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError("trailing content after the last edge", line_no);
    }
  }
  return g;
}

} // namespace girthgen
