#include "girthgen/errors.hpp"
#include "girthgen/graph.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>
#include <stdexcept>

using namespace girthgen;

namespace {

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  }
  return g;
}

Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

Graph random_graph(std::size_t n, std::size_t m, Rng &rng) {
  Graph g(n);
  while (g.size() < m) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a != b && !g.has_edge(a, b)) {
      g.add_edge(a, b);
    }
  }
  return g;
}

} // namespace

TEST_CASE("edges are stored with the smaller endpoint first") {
  const Edge e(5, 2);
  CHECK(e.u == 2);
  CHECK(e.v == 5);
  CHECK(Edge(2, 5) == e);
  CHECK(Edge(1, 9) < Edge(2, 3));
}

TEST_CASE("length ordering treats infinity as largest") {
  CHECK(Length::finite(3) < Length::infinite());
  CHECK(Length::infinite() == Length::infinite());
  CHECK(Length::finite(4) > Length::finite(3));
  CHECK(Length::infinite().exceeds(1000));
  CHECK(Length::finite(4).exceeds(3));
  CHECK_FALSE(Length::finite(3).exceeds(3));
}

TEST_CASE("add_edge rejects loops, duplicates and bad indices") {
  Graph g(4);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
  CHECK(g.size() == 1);
  CHECK(g.has_edge(1, 0));
  CHECK(g.degree(0) == 1);
}

TEST_CASE("edges() is sorted regardless of insertion order") {
  Graph a(5), b(5);
  a.add_edge(3, 4);
  a.add_edge(0, 2);
  a.add_edge(1, 0);
  b.add_edge(0, 1);
  b.add_edge(2, 0);
  b.add_edge(4, 3);
  CHECK(a == b);
  const auto e = a.edges();
  REQUIRE(e.size() == 3);
  CHECK(e[0] == Edge(0, 1));
  CHECK(e[1] == Edge(0, 2));
  CHECK(e[2] == Edge(3, 4));
}

TEST_CASE("girth of standard graphs") {
  CHECK(girth(cycle_graph(5)) == Length::finite(5));
  CHECK(girth(cycle_graph(3)) == Length::finite(3));
  CHECK(girth(petersen()) == Length::finite(5));
  CHECK(girth(Graph(6)).is_infinite());

  Graph path(5);
  for (Vertex i = 0; i + 1 < 5; ++i) path.add_edge(i, i + 1);
  CHECK(girth(path).is_infinite());

  Graph k4(4);
  for (Vertex i = 0; i < 4; ++i)
    for (Vertex j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  CHECK(girth(k4) == Length::finite(3));

  Graph k33(6);
  for (Vertex i = 0; i < 3; ++i)
    for (Vertex j = 3; j < 6; ++j) k33.add_edge(i, j);
  CHECK(girth(k33) == Length::finite(4));
}

TEST_CASE("girth agrees with the edge-deletion oracle on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng.below(10);
    const std::size_t m = rng.below(std::min<std::size_t>(n * (n - 1) / 2, n + 4) + 1);
    const Graph g = random_graph(n, m, rng);
    const auto expected = oracle::girth_by_deletion(g);
    CHECK(oracle::girth_by_bfs_deletion(g) == expected);
    const GirthResult got = girth(g);
    if (expected) {
      REQUIRE(got.is_finite());
      CHECK(got.value() == *expected);
    } else {
      CHECK(got.is_infinite());
    }
  }
}

TEST_CASE("distances agree with Floyd-Warshall") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    const Graph g = random_graph(n, std::min(n * (n - 1) / 2, rng.below(n + 3)), rng);
    const auto fw = oracle::floyd_warshall(g);
    for (Vertex s = 0; s < n; ++s) {
      const auto d = distances_from(g, s);
      for (Vertex t = 0; t < n; ++t) {
        if (fw[s][t] >= oracle::kFar) {
          CHECK(d[t].is_infinite());
          CHECK(bounded_distance(g, s, t, n).is_infinite());
        } else {
          CHECK(d[t] == Length::finite(fw[s][t]));
          for (std::size_t limit = 0; limit < 5; ++limit) {
            const Length b = bounded_distance(g, s, t, limit);
            if (fw[s][t] <= limit) {
              CHECK(b == Length::finite(fw[s][t]));
            } else {
              CHECK(b.is_infinite());
            }
          }
        }
      }
    }
  }
}

TEST_CASE("cycle counts in complete graphs") {
  CHECK(count_cycles_complete(3, 3) == 1);
  CHECK(count_cycles_complete(4, 3) == 4);
  CHECK(count_cycles_complete(4, 4) == 3);
  CHECK(count_cycles_complete(5, 5) == 12);
  CHECK(count_cycles_complete(7, 3) == 35);
  CHECK(count_cycles_complete(7, 5) == 21 * 12);
  CHECK(count_cycles_complete(2, 3) == 0);
  CHECK_THROWS_AS(count_cycles_complete(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(count_cycles_complete(100000, 10), std::overflow_error);
  for (std::size_t n = 3; n < 12; ++n) {
    for (std::size_t r = 3; r <= n; ++r) {
      CHECK(log_count_cycles_complete(n, r) ==
            doctest::Approx(std::log(static_cast<double>(count_cycles_complete(n, r)))));
    }
  }
}

TEST_CASE("cycles through a pair agree with brute-force enumeration") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng.below(4);
    const int k = 3 + static_cast<int>(rng.below(3));
    const Graph g = oracle::random_reachable_state(n, 3, rng.below(n + 1), rng);
    const auto a = static_cast<Vertex>(rng.below(n));
    auto b = static_cast<Vertex>(rng.below(n - 1));
    if (b >= a) ++b;
    const Edge pair(a, b);
    const CycleTable got = count_simple_cycles_through(g, pair, k);
    const auto expected = oracle::cycles_through(g, pair, k);
    for (int r = 3; r <= k; ++r) {
      std::uint64_t total = 0;
      for (int l = 0; l <= r - 1; ++l) {
        CHECK(got.at(r, l) == expected[r][l]);
        total += expected[r][l];
      }
      CHECK(got.total(r) == total);
    }
  }
  CHECK_THROWS_AS(count_simple_cycles_through(Graph(5), Edge(0, 1), 2), std::invalid_argument);
  CHECK_THROWS_AS(count_simple_cycles_through(Graph(5), Edge(0, 1), 11), std::invalid_argument);
}

TEST_CASE("edge list round trip") {
  const Graph g = petersen();
  std::stringstream ss;
  write_edge_list(ss, g);
  const Graph back = read_edge_list(ss);
  CHECK(back == g);
  CHECK(back.order() == 10);

  std::stringstream iso("3 0\n");
  CHECK(read_edge_list(iso).order() == 3);
}

TEST_CASE("edge list parse errors carry positions") {
  auto parse = [](const std::string &text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("4\n"), ParseError);
  CHECK_THROWS_AS(parse("0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("4 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("4 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("4 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("4 1\n0 4\n"), ParseError);
  CHECK_THROWS_AS(parse("4 2\n0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("4 1\n0 1\n2 3\n"), ParseError);
  CHECK_NOTHROW(parse("4 1\n0 1\n\n"));
  try {
    parse("4 1\n0 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  try {
    parse("4 1\n0 1z\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
  }
}
