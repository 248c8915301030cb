#include "girthgen/bipartite.hpp"

#include "girthgen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace girthgen {

std::size_t DegreeSequence::edge_total() const {
  return std::accumulate(left.begin(), left.end(), std::size_t{0});
}

DegreeSumMismatch::DegreeSumMismatch(std::size_t left_sum, std::size_t right_sum)
    : std::invalid_argument("degree sums differ: left sums to " + std::to_string(left_sum) +
                            ", right sums to " + std::to_string(right_sum)),
      left_sum_(left_sum), right_sum_(right_sum) {}

DegreeSequence make_degree_sequence(std::vector<std::size_t> left, std::vector<std::size_t> right) {
  if (left.empty() || right.empty()) {
    throw std::invalid_argument("degree sequence: both sides need at least one vertex");
  }
  if (left.size() + right.size() > kMaxVertices) {
    throw std::invalid_argument("degree sequence: too many vertices");
  }
  auto zero = [](std::size_t d) { return d == 0; };
  if (std::any_of(left.begin(), left.end(), zero) || std::any_of(right.begin(), right.end(), zero)) {
    throw std::invalid_argument("degree sequence: every degree must be positive");
  }
  const std::size_t ls = std::accumulate(left.begin(), left.end(), std::size_t{0});
  const std::size_t rs = std::accumulate(right.begin(), right.end(), std::size_t{0});
  if (ls != rs) {
    throw DegreeSumMismatch(ls, rs);
  }
  return DegreeSequence{std::move(left), std::move(right)};
}

bool gale_ryser_feasible(const DegreeSequence &deg) {
  std::vector<std::size_t> a = deg.left;
  std::sort(a.begin(), a.end(), std::greater<>());
  const std::size_t ls = std::accumulate(a.begin(), a.end(), std::size_t{0});
  const std::size_t rs = std::accumulate(deg.right.begin(), deg.right.end(), std::size_t{0});
  if (ls != rs) {
    return false;
  }
  for (std::size_t k = 1; k <= a.size(); ++k) {
    std::size_t lhs = 0;
    for (std::size_t i = 0; i < k; ++i) {
      lhs += a[i];
    }
    std::size_t rhs = 0;
    for (std::size_t c : deg.right) {
      rhs += std::min(c, k);
    }
    if (lhs > rhs) {
      return false;
    }
  }
  return true;
}

BipartiteState::BipartiteState(DegreeSequence deg, int k)
    : deg_(std::move(deg)), k_(k), total_(deg_.edge_total()),
      graph_(deg_.left.size() + deg_.right.size()), residual_left_(deg_.left),
      residual_right_(deg_.right) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("bipartite sampler needs an even k >= 2, got " + std::to_string(k));
  }
  if (k > kMaxGirthParameter) {
    throw std::invalid_argument("k exceeds " + std::to_string(kMaxGirthParameter));
  }
}

std::size_t BipartiteState::residual(Vertex x) const {
  return is_left(x) ? residual_left_[x] : residual_right_[x - left_count()];
}

void BipartiteState::add_edge(BipPair p) {
  if (p.left >= left_count() || p.right >= right_count()) {
    throw std::invalid_argument("bipartite add_edge: index out of range");
  }
  if (residual_left_[p.left] == 0 || residual_right_[p.right] == 0) {
    throw std::invalid_argument("bipartite add_edge: residual degree exhausted");
  }
  graph_.add_edge(left_vertex(p.left), right_vertex(p.right));
  --residual_left_[p.left];
  --residual_right_[p.right];
}

std::vector<BipPair> bip_suitable_pairs(const BipartiteState &state) {
  const Graph &g = state.graph();
  const std::size_t n = state.left_count();
  const std::size_t m2 = state.right_count();
  const std::size_t limit = static_cast<std::size_t>(state.girth_parameter()) - 1;
  constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.order(), unseen);
  std::vector<Vertex> queue;
  std::vector<BipPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (state.residual_left(i) == 0) {
      continue;
    }
    // Mark everything within distance k - 1 of u_i.
    std::fill(dist.begin(), dist.end(), unseen);
    queue.assign(1, state.left_vertex(i));
    dist[queue[0]] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      if (dist[x] == limit) {
        continue;
      }
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == unseen) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t j = 0; j < m2; ++j) {
      if (state.residual_right(j) > 0 && dist[state.right_vertex(j)] == unseen) {
        out.push_back(BipPair{i, j});
      }
    }
  }
  return out;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of the b-factor for a vertex with `present` of its two cycle edges in
// G_t + anchor and residual degree rho there.
double log_b(std::size_t present, double rho) {
  if (present >= 2) {
    return 0.0;
  }
  const double b = present == 1 ? rho : rho * (rho - 1.0);
  return b > 0.0 ? std::log(b) : kNegInf;
}

// log[(rem - missing)! / rem!], rem = e - t - 1.
double log_falling_ratio(double rem, double missing) {
  if (missing > rem) {
    return kNegInf;
  }
  return std::lgamma(rem - missing + 1.0) - std::lgamma(rem + 1.0);
}

} // namespace

double cycle_weight(const BipartiteState &state, std::span<const Vertex> gamma, BipPair anchor) {
  const std::size_t len = gamma.size();
  if (len < 4 || len % 2 != 0) {
    throw std::invalid_argument("cycle_weight: cycle length must be even and at least 4");
  }
  const Vertex au = state.left_vertex(anchor.left);
  const Vertex av = state.right_vertex(anchor.right);
  const Graph &g = state.graph();

  std::vector<Vertex> sorted(gamma.begin(), gamma.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.back() >= g.order()) {
    throw std::invalid_argument("cycle_weight: cycle vertices must be distinct and in range");
  }

  auto is_anchor = [&](Vertex a, Vertex b) {
    return (a == au && b == av) || (a == av && b == au);
  };
  bool through_anchor = false;
  std::size_t in_graph = 0;
  std::vector<std::size_t> incident_present(len, 0);
  for (std::size_t p = 0; p < len; ++p) {
    const Vertex a = gamma[p];
    const Vertex b = gamma[(p + 1) % len];
    if (state.is_left(a) == state.is_left(b)) {
      throw std::invalid_argument("cycle_weight: cycle must alternate between the sides");
    }
    const bool anchor_edge = is_anchor(a, b);
    through_anchor = through_anchor || anchor_edge;
    const bool present = g.has_edge(a, b);
    in_graph += present ? 1 : 0;
    if (present || anchor_edge) {
      ++incident_present[p];
      ++incident_present[(p + 1) % len];
    }
  }
  if (!through_anchor) {
    throw std::invalid_argument("cycle_weight: cycle does not contain the anchor");
  }

  const double rem = static_cast<double>(state.edge_total()) -
                     static_cast<double>(state.step_index()) - 1.0;
  const double missing = static_cast<double>(len) - 1.0 - static_cast<double>(in_graph);
  double log_w = log_falling_ratio(rem, missing);
  for (std::size_t p = 0; p < len && log_w != kNegInf; ++p) {
    const Vertex x = gamma[p];
    double rho = static_cast<double>(state.residual(x));
    if (x == au || x == av) {
      rho -= 1.0;
    }
    log_w += log_b(incident_present[p], rho);
  }
  return log_w == kNegInf ? 0.0 : std::exp(log_w);
}

namespace {

// Depth-first enumeration of the alternating paths v_j = y_0, x_1, y_1, ...,
// y_{r-1} that close back to u_i; each cycle through the anchor is reached once.
struct CycleEnumerator {
  const BipartiteState &state;
  const Graph &g;
  Vertex au;
  Vertex av;
  std::size_t max_len;
  std::vector<double> log_rho;      // log residual in G_t + anchor
  std::vector<double> log_rho_pair; // log rho(rho - 1)
  std::vector<double> log_ratio;    // indexed by number of missing edges
  std::vector<char> used;
  double total = 0.0;

  double vertex_term(Vertex x, std::size_t present) const {
    if (present >= 2) return 0.0;
    return present == 1 ? log_rho[x] : log_rho_pair[x];
  }

  // `end` is the current last vertex, `in_prev` whether the edge entering it
  // lies in G_t + anchor, `len` the number of vertices on the path including
  // u_i, `missing` the absent edges so far, `acc` the accumulated log weight.
  void extend(Vertex end, bool in_prev, std::size_t len, std::size_t missing, double acc) {
    const bool end_left = state.is_left(end);
    if (!end_left && len >= 4) {
      // Close back to u_i.
      const bool closing = g.has_edge(end, au);
      const std::size_t miss = missing + (closing ? 0 : 1);
      const double term = acc + vertex_term(end, (in_prev ? 1 : 0) + (closing ? 1 : 0)) +
                          vertex_term(au, 1 + (closing ? 1 : 0));
      if (term != kNegInf && miss < log_ratio.size() && log_ratio[miss] != kNegInf) {
        total += std::exp(term + log_ratio[miss]);
      }
    }
    if (len >= max_len) {
      return;
    }
    const std::size_t lo = end_left ? state.left_count() : 0;
    const std::size_t hi = end_left ? g.order() : state.left_count();
    for (std::size_t y = lo; y < hi; ++y) {
      const Vertex next = static_cast<Vertex>(y);
      if (used[next]) {
        continue;
      }
      const bool edge = g.has_edge(end, next);
      const double term = acc + vertex_term(end, (in_prev ? 1 : 0) + (edge ? 1 : 0));
      if (term == kNegInf) {
        continue;
      }
      used[next] = 1;
      extend(next, edge, len + 1, missing + (edge ? 0 : 1), term);
      used[next] = 0;
    }
  }
};

} // namespace

double bip_exponent(const BipartiteState &state, BipPair anchor, double budget) {
  const int k = state.girth_parameter();
  if (k % 2 != 0) {
    throw std::invalid_argument("bip_exponent: k must be even");
  }
  if (k < 4) {
    return 0.0;
  }
  const double per_anchor = std::pow(static_cast<double>(state.left_count()) *
                                         static_cast<double>(state.right_count()),
                                     k / 2 - 1);
  if (per_anchor > budget) {
    throw BudgetExceeded("cycle enumeration cap exceeded: (n*m2)^(k/2-1) = " +
                             std::to_string(per_anchor) + " > cap " + std::to_string(budget),
                         per_anchor, budget);
  }
  const Graph &g = state.graph();
  const Vertex au = state.left_vertex(anchor.left);
  const Vertex av = state.right_vertex(anchor.right);

  CycleEnumerator en{state, g, au, av, static_cast<std::size_t>(k), {}, {}, {}, {}};
  en.log_rho.resize(g.order());
  en.log_rho_pair.resize(g.order());
  for (Vertex x = 0; x < g.order(); ++x) {
    double rho = static_cast<double>(state.residual(x));
    if (x == au || x == av) {
      rho -= 1.0;
    }
    en.log_rho[x] = rho > 0.0 ? std::log(rho) : kNegInf;
    en.log_rho_pair[x] = rho > 1.0 ? std::log(rho * (rho - 1.0)) : kNegInf;
  }
  const double rem = static_cast<double>(state.edge_total()) -
                     static_cast<double>(state.step_index()) - 1.0;
  for (std::size_t miss = 0; miss < static_cast<std::size_t>(k); ++miss) {
    en.log_ratio.push_back(log_falling_ratio(rem, static_cast<double>(miss)));
  }
  en.used.assign(g.order(), 0);
  en.used[au] = 1;
  en.used[av] = 1;
  // Path so far: u_i, v_j; the anchor edge is present in G_t + anchor.
  en.extend(av, true, 2, 0, 0.0);
  return en.total;
}

BipProbability bip_probability(const BipartiteState &state, double budget) {
  BipProbability out;
  out.pairs = bip_suitable_pairs(state);
  if (out.pairs.empty()) {
    throw NoSuitablePair(state.step_index());
  }
  std::vector<double> log_w;
  log_w.reserve(out.pairs.size());
  double top = kNegInf;
  for (const BipPair &p : out.pairs) {
    const double lw = std::log(static_cast<double>(state.residual_left(p.left))) +
                      std::log(static_cast<double>(state.residual_right(p.right))) -
                      bip_exponent(state, p, budget);
    log_w.push_back(lw);
    top = std::max(top, lw);
  }
  double z = 0.0;
  out.probabilities.reserve(log_w.size());
  for (double lw : log_w) {
    out.probabilities.push_back(std::exp(lw - top));
    z += out.probabilities.back();
  }
  for (double &p : out.probabilities) {
    p /= z;
  }
  return out;
}

GenerationOutcome bip_generate(const DegreeSequence &deg, int k, Rng &rng, double budget) {
  BipartiteState state(deg, k);
  while (state.step_index() < state.edge_total()) {
    if (bip_suitable_pairs(state).empty()) {
      return GenerationOutcome::failure(state.step_index());
    }
    const BipProbability q = bip_probability(state, budget);
    state.add_edge(q.pairs[sample_index(q.probabilities, rng)]);
  }
  return GenerationOutcome::success(state.graph());
}

void write_alist(std::ostream &out, const Graph &g, std::size_t left_count) {
  if (left_count == 0 || left_count >= g.order()) {
    throw std::invalid_argument("write_alist: invalid left side size");
  }
  const std::size_t n = left_count;
  const std::size_t m2 = g.order() - left_count;
  std::size_t max_l = 0;
  std::size_t max_r = 0;
  for (Vertex x = 0; x < g.order(); ++x) {
    for (Vertex y : g.neighbors(x)) {
      if ((x < n) == (y < n)) {
        throw std::invalid_argument("write_alist: graph is not bipartite across the split");
      }
    }
    (x < n ? max_l : max_r) = std::max(x < n ? max_l : max_r, g.degree(x));
  }
  auto join = [&out](auto first, auto last) {
    for (auto it = first; it != last; ++it) {
      out << (it == first ? "" : " ") << *it;
    }
    out << '\n';
  };
  out << n << ' ' << m2 << '\n' << max_l << ' ' << max_r << '\n';
  std::vector<std::size_t> degs;
  for (Vertex x = 0; x < n; ++x) degs.push_back(g.degree(x));
  join(degs.begin(), degs.end());
  degs.clear();
  for (Vertex x = static_cast<Vertex>(n); x < g.order(); ++x) degs.push_back(g.degree(x));
  join(degs.begin(), degs.end());
  for (Vertex x = 0; x < g.order(); ++x) {
    const std::size_t width = x < n ? max_l : max_r;
    std::vector<std::size_t> row;
    for (Vertex y : g.neighbors(x)) {
      row.push_back(x < n ? y - n + 1 : y + 1);
    }
    row.resize(width, 0);
    join(row.begin(), row.end());
  }
}

namespace {

std::vector<std::size_t> read_row(std::istream &in, std::size_t &line_no, std::size_t expected,
                                  const char *what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(std::string("missing ") + what, line_no + 1);
  }
  ++line_no;
  std::istringstream ss(line);
  std::vector<std::size_t> values;
  long long v = 0;
  while (ss >> v) {
    if (v < 0) {
      throw ParseError(std::string("negative value in ") + what, line_no);
    }
    values.push_back(static_cast<std::size_t>(v));
  }
  if (!ss.eof()) {
    throw ParseError(std::string("non-integer token in ") + what, line_no);
  }
  if (values.size() != expected) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(expected) +
                         " values, found " + std::to_string(values.size()),
                     line_no);
  }
  return values;
}

} // namespace

AlistGraph read_alist(std::istream &in) {
  std::size_t line_no = 0;
  const auto dims = read_row(in, line_no, 2, "dimensions");
  const std::size_t n = dims[0];
  const std::size_t m2 = dims[1];
  if (n == 0 || m2 == 0 || n + m2 > kMaxVertices) {
    throw ParseError("dimensions out of range", line_no);
  }
  const auto maxes = read_row(in, line_no, 2, "maximum degrees");
  const auto ldeg = read_row(in, line_no, n, "left degrees");
  const auto rdeg = read_row(in, line_no, m2, "right degrees");
  AlistGraph out{Graph(n + m2), n, m2};
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = read_row(in, line_no, maxes[0], "left neighbor list");
    std::size_t count = 0;
    for (std::size_t v : row) {
      if (v == 0) continue;
      if (v > m2) throw ParseError("right index out of range", line_no);
      const Vertex a = static_cast<Vertex>(i);
      const Vertex b = static_cast<Vertex>(n + v - 1);
      if (out.graph.has_edge(a, b)) throw ParseError("duplicate edge", line_no);
      out.graph.add_edge(a, b);
      ++count;
    }
    if (count != ldeg[i]) throw ParseError("left neighbor count disagrees with degree", line_no);
  }
  for (std::size_t j = 0; j < m2; ++j) {
    const auto row = read_row(in, line_no, maxes[1], "right neighbor list");
    std::size_t count = 0;
    for (std::size_t u : row) {
      if (u == 0) continue;
      if (u > n) throw ParseError("left index out of range", line_no);
      if (!out.graph.has_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(n + j))) {
        throw ParseError("right neighbor list disagrees with left lists", line_no);
      }
      ++count;
    }
    if (count != rdeg[j]) throw ParseError("right neighbor count disagrees with degree", line_no);
  }
  return out;
}

} // namespace girthgen
