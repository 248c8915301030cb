#include "girthgen/sampler.hpp"

#include "girthgen/errors.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>

namespace girthgen {

void validate(const SamplerParams &p) {
  if (p.n < 2 || p.n > kMaxVertices) {
    throw std::invalid_argument("n must be in [2, " + std::to_string(kMaxVertices) + "]");
  }
  if (p.k < 2 || p.k > kMaxGirthParameter) {
    throw std::invalid_argument("k must be in [2, " + std::to_string(kMaxGirthParameter) + "]");
  }
  if (p.m > p.pair_count()) {
    throw std::invalid_argument("m = " + std::to_string(p.m) + " exceeds n(n-1)/2 = " +
                                std::to_string(p.pair_count()));
  }
}

double proven_edge_limit(std::size_t n, int k) {
  const double exponent = 1.0 + 1.0 / (2.0 * k * (k + 3));
  return std::pow(static_cast<double>(n), exponent);
}

std::optional<std::string> regime_advisory(const SamplerParams &p) {
  if (p.k < 3) {
    return std::nullopt;
  }
  const double limit = proven_edge_limit(p.n, p.k);
  if (static_cast<double>(p.m) <= limit) {
    return std::nullopt;
  }
  return "m = " + std::to_string(p.m) + " exceeds n^(1+1/(2k(k+3))) = " +
         std::to_string(limit) + "; uniformity is not guaranteed in this regime";
}

namespace {

const SamplerParams &checked(const SamplerParams &p) {
  validate(p);
  return p;
}

} // namespace

SamplerState::SamplerState(const SamplerParams &params)
    : params_(checked(params)), graph_(params.n), cache_(params.n, params.k) {}

double SamplerState::q() const {
  const double t = static_cast<double>(step_index());
  const double m = static_cast<double>(params_.m);
  const double pairs = static_cast<double>(params_.pair_count());
  if (t >= pairs) {
    return 0.0;
  }
  return std::max(0.0, (m - t) / (pairs - t));
}

void SamplerState::add_edge(Edge e) {
  cache_.add_edge(e.u, e.v);
  graph_.add_edge(e.u, e.v);
}

ProbabilityMatrix::ProbabilityMatrix(std::size_t n, std::vector<double> weights, double total,
                                     std::size_t support)
    : n_(n), weights_(std::move(weights)), total_(total), support_(support) {
  if (weights_.size() != n * (n - 1) / 2 || !(total > 0.0)) {
    throw std::invalid_argument("ProbabilityMatrix: bad weight table");
  }
}

double ProbabilityMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) {
    return 0.0;
  }
  if (i > j) {
    std::swap(i, j);
  }
  return weights_[i * n_ - i * (i + 1) / 2 + (j - i - 1)] / total_;
}

namespace {

std::optional<ProbabilityMatrix> try_probability_matrix(const SamplerState &state,
                                                        std::vector<double> e = {}) {
  const std::size_t n = state.params().n;
  const PowerCache &cache = state.cache();
  const AffineExponent exponent(cache, state.q());
  constexpr double kBlocked = std::numeric_limits<double>::infinity();

  // One sweep over the upper triangle: exponent where the pair is suitable
  // (no walk of length <= k - 1), +inf where it is not.
  e.resize(n * (n - 1) / 2);
  std::size_t support = 0;
  double emin = kBlocked;
  std::size_t offset = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t len = n - i - 1;
    const std::span<double> seg(e.data() + offset, len);
    exponent.fill_row(i, i + 1, seg);
    for (int r = 1; r <= cache.max_power(); ++r) {
      const double *walks = cache.power(r).row(i).data() + i + 1;
      for (std::size_t x = 0; x < len; ++x) {
        if (walks[x] > 0.5) {
          seg[x] = kBlocked;
        }
      }
    }
    for (double v : seg) {
      if (v != kBlocked) {
        ++support;
        emin = std::min(emin, v);
      }
    }
    offset += len;
  }
  if (support == 0) {
    return std::nullopt;
  }
  double z = 0.0;
  for (double &v : e) {
    v = v == kBlocked ? 0.0 : std::exp(emin - v);
    z += v;
  }
  return ProbabilityMatrix(n, std::move(e), z, support);
}

} // namespace

ProbabilityMatrix probability_matrix(const SamplerState &state) {
  auto p = try_probability_matrix(state);
  if (!p) {
    throw NoSuitablePair(state.step_index());
  }
  return std::move(*p);
}

Edge sample_edge(const ProbabilityMatrix &p, Rng &rng) {
  const std::size_t n = p.dim();
  const double *w = p.weights().data();
  const double target = rng.uniform() * p.total();
  double acc = 0.0;
  Edge last;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++w) {
      if (*w <= 0.0) {
        continue;
      }
      acc += *w;
      last = Edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      if (target < acc) {
        return last;
      }
    }
  }
  // Rounding left target at or above the final partial sum.
  return last;
}

std::optional<Edge> step(SamplerState &state, Rng &rng) {
  if (state.step_index() >= state.params().m) {
    throw std::logic_error("step: all m edges are already placed");
  }
  auto p = try_probability_matrix(state, std::move(state.scratch_));
  if (!p) {
    return std::nullopt;
  }
  const Edge e = sample_edge(*p, rng);
  state.scratch_ = std::move(*p).release_weights();
  state.add_edge(e);
  return e;
}

GenerationOutcome generate(const SamplerParams &params, Rng &rng) {
  SamplerState state(params);
  while (state.step_index() < params.m) {
    if (!step(state, rng)) {
      auto out = GenerationOutcome::failure(state.step_index());
      out.advisory = regime_advisory(params);
      return out;
    }
  }
  auto out = GenerationOutcome::success(state.graph());
  out.advisory = regime_advisory(params);
  return out;
}

RetryResult generate_with_retries(const SamplerParams &params, Rng &rng, std::size_t max_retries) {
  if (max_retries == 0) {
    throw std::invalid_argument("generate_with_retries: max_retries must be at least 1");
  }
  RetryResult result;
  for (std::size_t attempt = 1; attempt <= max_retries; ++attempt) {
    GenerationOutcome out = generate(params, rng);
    result.attempts = attempt;
    result.advisory = out.advisory;
    if (out.succeeded()) {
      result.graph = std::move(out.graph());
      return result;
    }
    result.failures.push_back(out.failed_at());
  }
  throw RetriesExhausted(max_retries, result.failures.back());
}

double expected_simple_cycles(const SamplerState &state, Edge pair) {
  const int k = state.params().k;
  if (k < 3) {
    return 0.0;
  }
  const CycleTable table = count_simple_cycles_through(state.graph(), pair, k);
  const double q = state.q();
  double total = 0.0;
  for (int r = 3; r <= k; ++r) {
    for (int l = 0; l <= r - 2; ++l) {
      total += static_cast<double>(table.at(r, l)) * std::pow(q, r - 1 - l);
    }
  }
  return total;
}

StepTiming time_steps(const SamplerParams &params, std::uint64_t seed, std::size_t steps) {
  SamplerState state(params);
  Rng rng(seed);
  StepTiming timing;
  timing.n = params.n;
  const std::size_t limit = std::min(steps, params.m);
  const auto start = std::chrono::steady_clock::now();
  while (state.step_index() < limit) {
    if (!step(state, rng)) {
      timing.failed = true;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  timing.steps = state.step_index();
  if (timing.steps > 0) {
    timing.mean_step_ms =
        std::chrono::duration<double, std::milli>(stop - start).count() / timing.steps;
  }
  return timing;
}

} // namespace girthgen
