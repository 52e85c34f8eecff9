#pragma once

// Seeded instance families for experiments and property checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "speedscale/core.hpp"

namespace speedscale {

enum class ValueDistribution { kUniform, kHeavyTail };

struct RandomInstanceConfig {
  int n_min = 1;
  int n_max = 30;
  double arrival_rate = 3.0;  // mean arrivals per slot
  double infinite_prob = 0.2;
  int max_deadline = 5;
  ValueDistribution values = ValueDistribution::kUniform;
  double value_scale = 0.0;  // 0: 4 * c_k0 with k0 = ceil(arrival_rate)
};

/// Stable per-item seed so a batch does not depend on evaluation order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t x = seed ^ (a * 0x9E3779B97F4A7C15ull) ^ (b * 0xC2B2AE3D27D4EB4Full);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

inline double default_value_scale(const RandomInstanceConfig& cfg, const CostModel& cost) {
  if (cfg.value_scale > 0.0) return cfg.value_scale;
  const auto k0 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(cfg.arrival_rate)));
  return 4.0 * effective_cost(cost, k0);
}

/// Poisson-like arrivals: each slot draws Poisson(arrival_rate) new jobs
/// until n jobs exist.
inline Instance random_instance(const RandomInstanceConfig& cfg, const CostModel& cost, std::uint64_t seed,
                                std::string label = {}) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(cfg.n_min, cfg.n_max)(rng);
  std::poisson_distribution<int> per_slot(cfg.arrival_rate);
  std::bernoulli_distribution inf(cfg.infinite_prob);
  std::uniform_int_distribution<int> dl(1, std::max(1, cfg.max_deadline));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = default_value_scale(cfg, cost);

  std::vector<Job> jobs;
  Slot t = 1;
  while (static_cast<int>(jobs.size()) < n) {
    const int arrivals = per_slot(rng);
    for (int a = 0; a < arrivals && static_cast<int>(jobs.size()) < n; ++a) {
      Job j;
      j.id = static_cast<JobId>(jobs.size());
      j.arrival = t;
      j.deadline = inf(rng) ? Deadline::infinite() : Deadline::slots(dl(rng));
      if (cfg.values == ValueDistribution::kUniform) {
        j.value = scale * unit(rng);
      } else {
        // Pareto(shape 1.5) with minimum scale/8, capped to keep sums finite
        const double u = std::max(unit(rng), 1e-12);
        j.value = std::min(scale / 8.0 * std::pow(u, -1.0 / 1.5), 1e6 * scale);
      }
      jobs.push_back(j);
    }
    ++t;
  }
  return Instance(std::move(jobs), std::move(label));
}

/// Small instances whose offline horizon stays within max_horizon, for
/// exhaustive cross-checks. Arrivals lie in [1, max_horizon], finite
/// expiries never exceed max_horizon, and infinite deadlines are kept only
/// while last arrival + their count fits.
inline Instance small_random_instance(int n_max, Slot max_horizon, double value_max, std::uint64_t seed,
                                      double infinite_prob = 0.25) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(0, n_max)(rng);
  std::uniform_real_distribution<double> val(0.0, value_max);
  std::uniform_int_distribution<Slot> arr(1, max_horizon);
  std::bernoulli_distribution inf(infinite_prob);
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    Job j;
    j.id = i;
    j.arrival = arr(rng);
    j.value = val(rng);
    j.deadline = Deadline::slots(std::uniform_int_distribution<Slot>(1, max_horizon - j.arrival + 1)(rng));
    jobs.push_back(j);
  }
  auto horizon = [&jobs] {
    Slot h = 0, open = 0;
    for (const auto& j : jobs) {
      h = std::max(h, j.expiry().value_or(j.arrival));
      open += j.deadline.is_infinite();
    }
    return h + open;
  };
  for (auto& j : jobs) {
    if (!inf(rng)) continue;
    const Deadline keep = j.deadline;
    j.deadline = Deadline::infinite();
    if (horizon() > max_horizon) j.deadline = keep;
  }
  return Instance(std::move(jobs), "small-" + std::to_string(seed));
}

}  // namespace speedscale
