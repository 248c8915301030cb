#include "girthgen/errors.hpp"
#include "girthgen/sampler.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

using namespace girthgen;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate({7, 8, 3}));
  CHECK_NOTHROW(validate({5, 10, 2}));
  CHECK_THROWS_AS(validate({1, 0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 11, 3}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate({5, 2, 11}), std::invalid_argument);
  CHECK_THROWS_AS(validate({kMaxVertices + 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(SamplerState({5, 11, 3}), std::invalid_argument);
}

TEST_CASE("regime advisory") {
  CHECK(proven_edge_limit(100, 3) == doctest::Approx(std::pow(100.0, 1.0 + 1.0 / 36.0)));
  CHECK_FALSE(regime_advisory({100, 100, 3}).has_value());
  CHECK(regime_advisory({100, 200, 3}).has_value());
  CHECK_FALSE(regime_advisory({10, 45, 2}).has_value());
}

TEST_CASE("q tracks the remaining edge fraction") {
  SamplerState s({6, 4, 3});
  CHECK(s.q() == doctest::Approx(4.0 / 15.0));
  s.add_edge(Edge(0, 1));
  CHECK(s.step_index() == 1);
  CHECK(s.q() == doctest::Approx(3.0 / 14.0));
  CHECK(s.cache().has_edge(0, 1));
  CHECK(s.graph().has_edge(0, 1));
  CHECK_THROWS_AS(s.add_edge(Edge(1, 0)), std::invalid_argument);
}

TEST_CASE("step distribution of a small state") {
  // n = 6, k = 3, m = 4 after placing (0, 1): every non-edge is suitable and
  // the weights depend only on whether a pair touches the placed edge.
  SamplerState s({6, 4, 3});
  s.add_edge(Edge(0, 1));
  const ProbabilityMatrix p = probability_matrix(s);
  CHECK(p.support_size() == 14);
  CHECK(p(0, 1) == 0.0);
  for (Vertex i = 0; i < 6; ++i) {
    CHECK(p(i, i) == 0.0);
    for (Vertex j = i + 1; j < 6; ++j) {
      if (i == 0 && j == 1) continue;
      const double expected = i < 2 ? 0.066224168114267071723 : 0.078367775847643904369;
      CHECK(p(i, j) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(p(j, i) == p(i, j));
    }
  }
}

TEST_CASE("probabilities are normalized over the suitable pairs") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(12);
    const int k = 2 + static_cast<int>(rng.below(4));
    const SamplerParams params{n, n * (n - 1) / 2, k};
    SamplerState s(params);
    const Graph g = oracle::random_reachable_state(n, std::max(k, 3), rng.below(n), rng);
    for (const Edge &e : g.edges()) s.add_edge(e);
    const auto d = oracle::floyd_warshall(g);
    std::size_t suitable = 0;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) suitable += d[i][j] >= static_cast<std::size_t>(k);
    if (suitable == 0) {
      CHECK_THROWS_AS(probability_matrix(s), NoSuitablePair);
      continue;
    }
    const ProbabilityMatrix p = probability_matrix(s);
    CHECK(p.support_size() == suitable);
    double total = 0.0;
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        if (d[i][j] < static_cast<std::size_t>(k)) {
          CHECK(p(i, j) == 0.0);
        } else {
          CHECK(p(i, j) > 0.0);
        }
        total += p(i, j);
      }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("k = 2 steps are uniform over the non-edges") {
  SamplerState s({5, 6, 2});
  s.add_edge(Edge(0, 1));
  s.add_edge(Edge(1, 2));
  const ProbabilityMatrix p = probability_matrix(s);
  CHECK(p.support_size() == 8);
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex j = i + 1; j < 5; ++j)
      CHECK(p(i, j) == doctest::Approx(s.graph().has_edge(i, j) ? 0.0 : 1.0 / 8.0));
}

TEST_CASE("sample_edge follows the step distribution") {
  SamplerState s({6, 4, 3});
  s.add_edge(Edge(0, 1));
  const ProbabilityMatrix p = probability_matrix(s);
  Rng rng(12);
  std::map<std::pair<Vertex, Vertex>, int> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const Edge e = sample_edge(p, rng);
    REQUIRE(e.u < e.v);
    ++counts[{e.u, e.v}];
  }
  CHECK(counts.count({0, 1}) == 0);
  double chi = 0.0;
  for (const auto &[key, c] : counts) {
    const double expected = draws * p(key.first, key.second);
    chi += (c - expected) * (c - expected) / expected;
  }
  // 99.9% point of chi-square with 13 degrees of freedom.
  CHECK(chi < 34.53);
}

TEST_CASE("expected simple cycles match the brute-force table") {
  Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + rng.below(4);
    const int k = 3 + static_cast<int>(rng.below(3));
    const SamplerParams params{n, n * (n - 1) / 2 - 1, k};
    SamplerState s(params);
    const Graph g = oracle::random_reachable_state(n, k, rng.below(n), rng);
    for (const Edge &e : g.edges()) s.add_edge(e);
    const double q = s.q();
    const auto a = static_cast<Vertex>(rng.below(n));
    auto b = static_cast<Vertex>(rng.below(n - 1));
    if (b >= a) ++b;
    const auto table = oracle::cycles_through(g, Edge(a, b), k);
    double expected = 0.0;
    for (int r = 3; r <= k; ++r)
      for (int l = 0; l <= r - 2; ++l) expected += table[r][l] * std::pow(q, r - 1 - l);
    CHECK(expected_simple_cycles(s, Edge(a, b)) == doctest::Approx(expected).epsilon(1e-12));
  }
  SamplerState flat({5, 3, 2});
  CHECK(expected_simple_cycles(flat, Edge(0, 1)) == 0.0);
}

TEST_CASE("a blocked step reports FAIL and leaves the state alone") {
  SamplerState s({3, 3, 3});
  Rng rng(1);
  REQUIRE(step(s, rng).has_value());
  REQUIRE(step(s, rng).has_value());
  const Graph before = s.graph();
  CHECK_FALSE(step(s, rng).has_value());
  CHECK(s.graph() == before);
  CHECK(s.step_index() == 2);

  SamplerState done({4, 1, 3});
  REQUIRE(step(done, rng).has_value());
  CHECK_THROWS_AS(step(done, rng), std::logic_error);
}

TEST_CASE("generate produces valid graphs reproducibly") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SamplerParams params{12, 14, 4};
    Rng a(seed), b(seed);
    const GenerationOutcome x = generate(params, a);
    const GenerationOutcome y = generate(params, b);
    REQUIRE(x.succeeded() == y.succeeded());
    if (!x.succeeded()) {
      CHECK(x.failed_at() == y.failed_at());
      continue;
    }
    CHECK(x.graph() == y.graph());
    CHECK(x.graph().size() == 14);
    CHECK(oracle::girth_exceeds(x.graph(), 4));
  }
}

TEST_CASE("generate reports where it failed") {
  Rng rng(4);
  const GenerationOutcome out = generate({3, 3, 3}, rng);
  REQUIRE_FALSE(out.succeeded());
  CHECK(out.failed_at() == 2);
  CHECK_THROWS_AS(out.graph(), std::bad_variant_access);

  const GenerationOutcome outside = generate({30, 200, 3}, rng);
  CHECK(outside.advisory.has_value());
}

TEST_CASE("retries") {
  Rng rng(9);
  CHECK_THROWS_AS(generate_with_retries({3, 3, 3}, rng, 5), RetriesExhausted);
  try {
    generate_with_retries({3, 3, 3}, rng, 4);
  } catch (const RetriesExhausted &e) {
    CHECK(e.attempts() == 4);
    CHECK(e.last_failed_at() == 2);
  }
  CHECK_THROWS_AS(generate_with_retries({7, 8, 3}, rng, 0), std::invalid_argument);
  const RetryResult ok = generate_with_retries({7, 8, 3}, rng, 100);
  CHECK(ok.graph.size() == 8);
  CHECK(ok.failures.size() == ok.attempts - 1);
  CHECK(oracle::girth_exceeds(ok.graph, 3));
}

TEST_CASE("step timing") {
  const StepTiming t = time_steps({40, 45, 4}, 3, 10);
  CHECK(t.n == 40);
  CHECK(t.steps == 10);
  CHECK(t.mean_step_ms >= 0.0);
  CHECK_FALSE(t.failed);
}
