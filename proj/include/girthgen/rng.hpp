#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace girthgen {

/// SplitMix64 finalizer. Used to turn (seed, counter) pairs into
/// well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the `stream`-th independent run derived from a user seed.
///
/// Scheme: splitmix64(seed ^ splitmix64(stream + 1)). Every subcommand that
/// performs several runs numbers them 0, 1, 2, ... and seeds run i with
/// derive_seed(seed, i).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded 64-bit random source. Output is a pure function of the seed.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Index drawn with probability proportional to `weights` by a cumulative
/// scan with one uniform variate. Weights must be non-negative with a
/// positive sum.
std::size_t sample_index(std::span<const double> weights, Rng &rng);

} // namespace girthgen
