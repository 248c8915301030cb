#pragma once

#include "girthgen/bipartite.hpp"
#include "girthgen/graph.hpp"
#include "girthgen/rng.hpp"
#include "girthgen/sampler.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace girthgen {

/// Byte string identifying a labeled graph: vertex count then the sorted edge
/// list, each number as 4 little-endian bytes.
std::string canonical_key(const Graph &g);

/// Enumerated target set of a uniformity test.
class GroundTruth {
public:
  GroundTruth() = default;

  /// All of G(n, m, k), via exact_enumerate.
  static GroundTruth graphs(std::size_t n, std::size_t m, int k, double budget);
  /// All simple bipartite realizations of `deg` with girth > k.
  static GroundTruth bipartite(const DegreeSequence &deg, int k, double budget);

  void insert(std::string key) { keys_.insert(std::move(key)); }
  bool contains(const std::string &key) const { return keys_.count(key) != 0; }
  std::size_t size() const { return keys_.size(); }

private:
  std::unordered_set<std::string> keys_;
};

/// A sampled graph is outside the enumerated set.
class ForeignGraph : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Observed counts per canonical key plus failed runs.
struct EmpiricalDistribution {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t failures = 0;

  void record(const Graph &g);
  void record_failure();
  std::uint64_t successes() const { return total - failures; }
};

/// Half the L1 distance between the success-conditioned empirical
/// distribution and the uniform distribution on `truth`. Throws ForeignGraph
/// when an observed key is not in `truth`. Returns 1 when nothing succeeded.
double tv_distance(const EmpiricalDistribution &emp, const GroundTruth &truth);

/// Same, against a uniform distribution on `ground_truth_size` outcomes,
/// without the membership check.
double tv_distance(const EmpiricalDistribution &emp, std::size_t ground_truth_size);

struct ChiSquare {
  double statistic = 0.0;
  double dof = 0.0;
  /// Upper tail probability of the statistic.
  double p_value = 0.0;
};

/// Pearson goodness of fit against uniform over `cells` outcomes.
ChiSquare chi_square_uniform(const EmpiricalDistribution &emp, std::size_t cells);

/// Expected TV distance of an exactly uniform sampler after `samples` draws
/// over `cells` outcomes (each count Binomial(samples, 1/cells); uses de
/// Moivre's closed form for the binomial mean absolute deviation).
double expected_uniform_tv(std::size_t cells, std::uint64_t samples);

/// One run of a sampler; nullopt reports FAIL.
using GraphSampler = std::function<std::optional<Graph>(Rng &)>;

GraphSampler algorithm_s_sampler(const SamplerParams &params);
GraphSampler rejection_sampler(const SamplerParams &params);
GraphSampler bip_sampler(const DegreeSequence &deg, int k);
GraphSampler bip_rejection_sampler(const DegreeSequence &deg, int k);

struct UniformityReport {
  nlohmann::json instance;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures = 0;
  double failure_rate = 0.0;
  double tv_distance = 0.0;
  double baseline_tv = 0.0;
  ChiSquare chi_square;
  ChiSquare baseline_chi_square;
  double sampling_noise_bound = 0.0;
  std::size_t ground_truth_size = 0;
};

nlohmann::json to_json(const UniformityReport &r);

/// Paired campaign: run i draws from `sampler` with derive_seed(seed, 2i) and
/// from `baseline` with derive_seed(seed, 2i + 1); both arms are scored
/// against `truth`.
UniformityReport uniformity_campaign(const GraphSampler &sampler, const GraphSampler &baseline,
                                     const GroundTruth &truth, std::uint64_t samples,
                                     std::uint64_t seed, nlohmann::json instance = {});

/// Sequential sampler on G(n, m, k) against the rejection baseline.
UniformityReport uniformity_campaign(const SamplerParams &params, std::uint64_t samples,
                                     std::uint64_t seed, double budget);

} // namespace girthgen
