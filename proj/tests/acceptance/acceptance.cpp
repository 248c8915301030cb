// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include "girthgen/bipartite.hpp"
#include "girthgen/counting.hpp"
#include "girthgen/errors.hpp"
#include "girthgen/matrix.hpp"
#include "girthgen/sampler.hpp"
#include "girthgen/validation.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace girthgen;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t regime_edges(std::size_t n, int k) {
  return static_cast<std::size_t>(std::floor(proven_edge_limit(n, k)));
}

bool valid_graph(const Graph &g, std::size_t m, int k) {
  if (g.size() != m) return false;
  const auto gr = oracle::girth_by_bfs_deletion(g);
  return !gr || *gr > static_cast<std::size_t>(k);
}

Verdict criterion_1() {
  const std::size_t ns[] = {10, 30, 100};
  const int ks[] = {3, 4, 5};
  const std::size_t total_runs = 10000;
  std::size_t runs = 0, successes = 0, invalid = 0, failures = 0;
  std::size_t cell = 0;
  for (std::size_t n : ns) {
    for (int k : ks) {
      const SamplerParams params{n, regime_edges(n, k), k};
      const std::size_t share = total_runs / 9 + (cell < total_runs % 9 ? 1 : 0);
      for (std::size_t i = 0; i < share; ++i) {
        Rng rng(derive_seed(kSeed + cell, i));
        const GenerationOutcome out = generate(params, rng);
        ++runs;
        if (!out.succeeded()) {
          ++failures;
          continue;
        }
        ++successes;
        invalid += valid_graph(out.graph(), params.m, k) ? 0 : 1;
      }
      ++cell;
    }
  }
  return {invalid == 0 && successes > 0 && runs == total_runs,
          fmt("%zu runs, %zu successes, %zu FAIL, %zu invalid outputs", runs, successes, failures,
              invalid)};
}

Verdict criterion_2() {
  const UniformityReport r =
      uniformity_campaign(SamplerParams{7, 8, 3}, 100000, kSeed, kDefaultEnumerationBudget);
  return {r.tv_distance <= r.baseline_tv + 0.03,
          fmt("|G|=%zu, TV(S)=%.4f, TV(baseline)=%.4f, noise floor=%.4f, margin 0.03, FAIL rate=%.5f",
              r.ground_truth_size, r.tv_distance, r.baseline_tv, r.sampling_noise_bound,
              r.failure_rate)};
}

Verdict criterion_3() {
  const SamplerParams params{5, 3, 2};
  const GroundTruth truth = GroundTruth::graphs(5, 3, 2, kDefaultEnumerationBudget);
  const UniformityReport r = uniformity_campaign(algorithm_s_sampler(params),
                                                 rejection_sampler(params), truth, 100000, kSeed);
  return {truth.size() == 120 && r.failures == 0 && r.chi_square.p_value >= 0.01,
          fmt("%zu outcomes, chi2=%.2f on %.0f dof, p=%.4f", truth.size(), r.chi_square.statistic,
              r.chi_square.dof, r.chi_square.p_value)};
}

Verdict criterion_4() {
  bool pass = true;
  std::string detail;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{7, 8}, {8, 9}}) {
    const ExactCount exact = exact_enumerate(n, m, 3);
    const CountEstimate est = janson_log_count(n, m, 3);
    const double diff = est.log_count - std::log(static_cast<double>(exact.count));
    pass = pass && std::abs(diff) <= 0.2;
    detail += fmt("(%zu,%zu,3): exact=%llu diff=%+.4f  ", n, m,
                  static_cast<unsigned long long>(exact.count), diff);
  }
  return {pass, detail + "band 0.2"};
}

/// Random state reached by running the sampler for a random number of steps.
SamplerState random_state(Rng &rng) {
  const std::size_t n = 2 + rng.below(29);
  const int k = 2 + static_cast<int>(rng.below(4));
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t m = rng.below(std::min(pairs, 2 * n) + 1);
  SamplerState state({n, m, k});
  const std::size_t t = m == 0 ? 0 : rng.below(m);
  for (std::size_t s = 0; s < t; ++s) {
    if (!step(state, rng)) break;
  }
  return state;
}

Verdict criterion_5() {
  Rng rng(kSeed + 5);
  double worst_exponent = 0.0, worst_power = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SamplerState state = random_state(rng);
    const DenseSymMatrix naive = exponent_matrix_naive(state.cache(), state.q());
    const DenseSymMatrix affine = exponent_matrix_affine(state.cache(), state.q());
    const std::size_t n = naive.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_exponent =
            std::max(worst_exponent, std::abs(affine(i, j) - naive(i, j)) / (1.0 + std::abs(naive(i, j))));
    const PowerCache fresh = PowerCache::from_graph(state.graph(), state.params().k);
    for (int r = 1; r <= fresh.max_power(); ++r)
      worst_power = std::max(worst_power, max_abs_diff(fresh.power(r), state.cache().power(r)));
  }
  return {worst_exponent <= 1e-9 && worst_power <= 1e-9,
          fmt("1000 states, max scaled exponent gap=%.2e, max power gap=%.2e", worst_exponent,
              worst_power)};
}

Verdict criterion_6() {
  Rng rng(kSeed + 6);
  std::size_t mismatches = 0, pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SamplerState state = random_state(rng);
    const PairMask mask = suitable_mask(state.cache());
    const Graph &g = state.graph();
    const std::size_t k = static_cast<std::size_t>(state.params().k);
    for (Vertex i = 0; i < g.order(); ++i) {
      const auto d = oracle::bfs(g, i);
      for (Vertex j = 0; j < g.order(); ++j) {
        if (i == j) continue;
        ++pairs;
        mismatches += mask(i, j) != (d[j] >= k) ? 1 : 0;
      }
    }
  }
  return {mismatches == 0, fmt("1000 states, %zu ordered pairs, %zu mismatches", pairs, mismatches)};
}

Verdict criterion_7() {
  const int k = 4;
  const std::size_t ns[] = {250, 500, 1000};
  double mean[3];
  for (int i = 0; i < 3; ++i) {
    const SamplerParams params{ns[i], regime_edges(ns[i], k), k};
    std::vector<double> reps;
    for (int rep = 0; rep < 3; ++rep) {
      reps.push_back(time_steps(params, derive_seed(kSeed + 7, 3 * i + rep), 30).mean_step_ms);
    }
    std::sort(reps.begin(), reps.end());
    mean[i] = reps[1];
  }
  const double r1 = mean[1] / mean[0];
  const double r2 = mean[2] / mean[1];

  const SamplerParams full{1000, regime_edges(1000, k), k};
  Rng rng(derive_seed(kSeed + 7, 100));
  const auto start = std::chrono::steady_clock::now();
  const GenerationOutcome out = generate(full, rng);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok_ratio = r1 >= 2.8 && r1 <= 5.5 && r2 >= 2.8 && r2 <= 5.5;
  return {ok_ratio && seconds < 600.0,
          fmt("step ms %.3f/%.3f/%.3f, ratios %.2f %.2f, full run m=%zu %s in %.1f s", mean[0],
              mean[1], mean[2], r1, r2, full.m, out.succeeded() ? "succeeded" : "FAILED", seconds)};
}

Verdict criterion_8() {
  const DegreeSequence cubic =
      make_degree_sequence(std::vector<std::size_t>(12, 3), std::vector<std::size_t>(12, 3));
  std::size_t successes = 0, invalid = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(kSeed + 8, i));
    const GenerationOutcome out = bip_generate(cubic, 4, rng);
    if (!out.succeeded()) continue;
    ++successes;
    const Graph &g = out.graph();
    bool ok = g.size() == 36;
    for (Vertex x = 0; x < 24 && ok; ++x) {
      ok = g.degree(x) == 3;
      for (Vertex y : g.neighbors(x)) ok = ok && ((x < 12) != (y < 12));
    }
    const auto gr = oracle::girth_by_bfs_deletion(g);
    ok = ok && (!gr || *gr > 4);
    invalid += ok ? 0 : 1;
  }

  const DegreeSequence square = make_degree_sequence({2, 2}, {2, 2});
  std::size_t square_fail = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(kSeed + 80, i));
    square_fail += bip_generate(square, 4, rng).succeeded() ? 0 : 1;
  }

  const DegreeSequence hexagon = make_degree_sequence({2, 2, 2}, {2, 2, 2});
  const GroundTruth truth = GroundTruth::bipartite(hexagon, 4, kDefaultEnumerationBudget);
  const UniformityReport r = uniformity_campaign(bip_sampler(hexagon, 4),
                                                 bip_rejection_sampler(hexagon, 4), truth, 100000,
                                                 kSeed + 81);
  const bool pass = successes > 0 && invalid == 0 && square_fail == 1000 &&
                    r.tv_distance <= r.baseline_tv + 0.05;
  return {pass, fmt("3-regular 12+12: %zu/1000 succeeded, %zu invalid; (2,2): %zu/1000 FAIL; "
                    "(2,2,2): |G|=%zu TV=%.4f baseline=%.4f margin 0.05",
                    successes, invalid, square_fail, truth.size(), r.tv_distance, r.baseline_tv)};
}

Verdict criterion_9() {
  const std::size_t ns[] = {50, 100, 200};
  const int runs = 1000;
  double rate[3];
  for (int i = 0; i < 3; ++i) {
    const SamplerParams params{ns[i], regime_edges(ns[i], 3), 3};
    int fails = 0;
    for (int r = 0; r < runs; ++r) {
      Rng rng(derive_seed(kSeed + 9 + i, r));
      fails += generate(params, rng).succeeded() ? 0 : 1;
    }
    rate[i] = static_cast<double>(fails) / runs;
  }
  bool pass = true;
  for (int i = 0; i + 1 < 3; ++i) {
    const double sigma = std::sqrt(rate[i] * (1 - rate[i]) / runs + rate[i + 1] * (1 - rate[i + 1]) / runs);
    pass = pass && rate[i + 1] <= rate[i] + 2.0 * sigma;
  }
  return {pass, fmt("FAIL rates n=50: %.4f, n=100: %.4f, n=200: %.4f (1000 runs each)", rate[0],
                    rate[1], rate[2])};
}

} // namespace

int main(int argc, char **argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion_1, criterion_2, criterion_3,
                                                       criterion_4, criterion_5, criterion_6,
                                                       criterion_7, criterion_8, criterion_9};
  std::set<int> chosen;
  for (int i = 1; i < argc; ++i) chosen.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c) + 1;
    if (!chosen.empty() && !chosen.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = criteria[c]();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
