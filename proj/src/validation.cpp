#include "girthgen/validation.hpp"

#include "girthgen/counting.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>

namespace girthgen {

std::string canonical_key(const Graph &g) {
  const auto edges = g.edges();
  std::string key;
  key.reserve(4 + 8 * edges.size());
  auto put = [&key](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) {
      key.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
    }
  };
  put(static_cast<std::uint32_t>(g.order()));
  for (const Edge &e : edges) {
    put(e.u);
    put(e.v);
  }
  return key;
}

GroundTruth GroundTruth::graphs(std::size_t n, std::size_t m, int k, double budget) {
  GroundTruth truth;
  exact_enumerate(n, m, k, budget, [&](std::span<const Edge> edges) {
    truth.insert(canonical_key(Graph(n, edges)));
  });
  return truth;
}

GroundTruth GroundTruth::bipartite(const DegreeSequence &deg, int k, double budget) {
  GroundTruth truth;
  enumerate_bipartite(deg, k, budget, [&](const Graph &g) { truth.insert(canonical_key(g)); });
  return truth;
}

void EmpiricalDistribution::record(const Graph &g) {
  ++counts[canonical_key(g)];
  ++total;
}

void EmpiricalDistribution::record_failure() {
  ++failures;
  ++total;
}

double tv_distance(const EmpiricalDistribution &emp, std::size_t ground_truth_size) {
  const std::uint64_t s = emp.successes();
  if (s == 0 || ground_truth_size == 0) {
    return 1.0;
  }
  const double u = 1.0 / static_cast<double>(ground_truth_size);
  double l1 = 0.0;
  for (const auto &[key, c] : emp.counts) {
    l1 += std::abs(static_cast<double>(c) / static_cast<double>(s) - u);
  }
  const double unseen = static_cast<double>(ground_truth_size) - static_cast<double>(emp.counts.size());
  l1 += std::max(0.0, unseen) * u;
  return std::min(1.0, 0.5 * l1);
}

double tv_distance(const EmpiricalDistribution &emp, const GroundTruth &truth) {
  for (const auto &entry : emp.counts) {
    if (!truth.contains(entry.first)) {
      throw ForeignGraph("sampled graph is not in the enumerated ground-truth set");
    }
  }
  return tv_distance(emp, truth.size());
}

ChiSquare chi_square_uniform(const EmpiricalDistribution &emp, std::size_t cells) {
  ChiSquare out;
  const std::uint64_t s = emp.successes();
  if (cells < 2 || s == 0) {
    out.p_value = 1.0;
    return out;
  }
  const double expected = static_cast<double>(s) / static_cast<double>(cells);
  double stat = 0.0;
  for (const auto &entry : emp.counts) {
    const double d = static_cast<double>(entry.second) - expected;
    stat += d * d / expected;
  }
  const double unseen = static_cast<double>(cells) - static_cast<double>(emp.counts.size());
  stat += std::max(0.0, unseen) * expected;
  out.statistic = stat;
  out.dof = static_cast<double>(cells - 1);
  const boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, stat));
  return out;
}

double expected_uniform_tv(std::size_t cells, std::uint64_t samples) {
  if (cells == 0 || samples == 0) {
    return 1.0;
  }
  if (cells == 1) {
    return 0.0;
  }
  const double t = static_cast<double>(samples);
  const double p = 1.0 / static_cast<double>(cells);
  const double nu = std::floor(t * p) + 1.0;
  // E|X - tp| = 2 nu C(t, nu) p^nu (1 - p)^(t - nu + 1)
  const double log_mad = std::log(2.0 * nu) + log_binomial(t, nu) + nu * std::log(p) +
                         (t - nu + 1.0) * std::log1p(-p);
  const double mad = std::exp(log_mad);
  return 0.5 * static_cast<double>(cells) * mad / t;
}

GraphSampler algorithm_s_sampler(const SamplerParams &params) {
  validate(params);
  return [params](Rng &rng) -> std::optional<Graph> {
    GenerationOutcome out = generate(params, rng);
    if (!out.succeeded()) {
      return std::nullopt;
    }
    return std::move(out.graph());
  };
}

GraphSampler rejection_sampler(const SamplerParams &params) {
  validate(params);
  return [params](Rng &rng) -> std::optional<Graph> {
    return rejection_sample(params.n, params.m, params.k, rng).graph;
  };
}

GraphSampler bip_sampler(const DegreeSequence &deg, int k) {
  return [deg, k](Rng &rng) -> std::optional<Graph> {
    GenerationOutcome out = bip_generate(deg, k, rng);
    if (!out.succeeded()) {
      return std::nullopt;
    }
    return std::move(out.graph());
  };
}

GraphSampler bip_rejection_sampler(const DegreeSequence &deg, int k) {
  return [deg, k](Rng &rng) -> std::optional<Graph> {
    return bip_rejection_sample(deg, k, rng).graph;
  };
}

nlohmann::json to_json(const UniformityReport &r) {
  auto chi = [](const ChiSquare &c) {
    return nlohmann::json{{"stat", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}};
  };
  return nlohmann::json{{"instance", r.instance},
                        {"samples", r.samples},
                        {"seed", r.seed},
                        {"failures", r.failures},
                        {"failure_rate", r.failure_rate},
                        {"tv_distance", r.tv_distance},
                        {"baseline_tv", r.baseline_tv},
                        {"chi_square", chi(r.chi_square)},
                        {"baseline_chi_square", chi(r.baseline_chi_square)},
                        {"sampling_noise_bound", r.sampling_noise_bound},
                        {"ground_truth_size", r.ground_truth_size}};
}

UniformityReport uniformity_campaign(const GraphSampler &sampler, const GraphSampler &baseline,
                                     const GroundTruth &truth, std::uint64_t samples,
                                     std::uint64_t seed, nlohmann::json instance) {
  EmpiricalDistribution arm;
  EmpiricalDistribution base;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng_s(derive_seed(seed, 2 * i));
    if (auto g = sampler(rng_s)) {
      arm.record(*g);
    } else {
      arm.record_failure();
    }
    Rng rng_b(derive_seed(seed, 2 * i + 1));
    if (auto g = baseline(rng_b)) {
      base.record(*g);
    } else {
      base.record_failure();
    }
  }
  UniformityReport r;
  r.instance = std::move(instance);
  r.samples = samples;
  r.seed = seed;
  r.failures = arm.failures;
  r.failure_rate = samples ? static_cast<double>(arm.failures) / static_cast<double>(samples) : 0.0;
  r.tv_distance = tv_distance(arm, truth);
  r.baseline_tv = tv_distance(base, truth);
  r.chi_square = chi_square_uniform(arm, truth.size());
  r.baseline_chi_square = chi_square_uniform(base, truth.size());
  r.sampling_noise_bound = expected_uniform_tv(truth.size(), arm.successes());
  r.ground_truth_size = truth.size();
  return r;
}

UniformityReport uniformity_campaign(const SamplerParams &params, std::uint64_t samples,
                                     std::uint64_t seed, double budget) {
  validate(params);
  const GroundTruth truth = GroundTruth::graphs(params.n, params.m, params.k, budget);
  return uniformity_campaign(algorithm_s_sampler(params), rejection_sampler(params), truth, samples,
                             seed, nlohmann::json{{"n", params.n}, {"m", params.m}, {"k", params.k}});
}

} // namespace girthgen
