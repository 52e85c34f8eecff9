#pragma once

// Independent reference implementations used only by tests. They follow
// the definitions literally (subset enumeration, slot-by-slot DP) and share
// no code with the library beyond the domain types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "speedscale/core.hpp"

namespace oracle {

using speedscale::CostModel;
using speedscale::Instance;

inline double g(double alpha, std::int64_t k) { return k == 0 ? 0.0 : std::pow(static_cast<double>(k), alpha); }

/// Largest j with v(j) > g(j) - g(j-1), scanning the whole list.
inline std::size_t m_of(const std::vector<double>& sorted, double alpha) {
  std::size_t m = 0;
  for (std::size_t j = 1; j <= sorted.size(); ++j)
    if (sorted[j - 1] > g(alpha, j) - g(alpha, j - 1) && m == j - 1) m = j;
  return m;
}

/// Best single-slot profit from any subset of the given values.
inline double best_subset_profit(const std::vector<double>& vals, double alpha) {
  const std::size_t n = vals.size();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double s = 0.0;
    int c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) {
        s += vals[i];
        ++c;
      }
    best = std::max(best, s - g(alpha, c));
  }
  return best;
}

/// (M + C_Greedy) / P for the top-i jobs of a sorted pool.
inline double lcr(const std::vector<double>& sorted, double alpha, std::size_t i) {
  double top = 0.0;
  for (std::size_t j = 0; j < i; ++j) top += sorted[j];
  const std::vector<double> rest(sorted.begin() + static_cast<std::ptrdiff_t>(i), sorted.end());
  const double M = top - static_cast<double>(i) * g(alpha, 1);
  const double P = top - g(alpha, static_cast<std::int64_t>(i));
  return (M + best_subset_profit(rest, alpha)) / P;
}

/// Exact offline optimum by DP over (slot, processed-set) with submask
/// enumeration. Infinite deadlines are capped at `cap` slots past the last
/// arrival.
inline double offline_dp(const Instance& inst, const CostModel& cost, std::int64_t cap) {
  const auto& jobs = inst.jobs();
  const std::size_t n = jobs.size();
  if (n == 0) return 0.0;
  std::int64_t horizon = inst.last_arrival() + cap;
  for (const auto& j : jobs)
    if (auto e = j.expiry()) horizon = std::max(horizon, *e);
  std::map<std::pair<std::int64_t, std::uint32_t>, double> memo;
  std::function<double(std::int64_t, std::uint32_t)> rec = [&](std::int64_t t, std::uint32_t done) -> double {
    if (t > horizon) return 0.0;
    auto key = std::make_pair(t, done);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint32_t avail = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!(done >> i & 1u) && jobs[i].available_at(t)) avail |= 1u << i;
    double best = rec(t + 1, done);
    for (std::uint32_t sub = avail; sub; sub = (sub - 1) & avail) {
      double s = 0.0;
      int c = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (sub >> i & 1u) {
          s += jobs[i].value;
          ++c;
        }
      best = std::max(best, s - cost.g(c) + rec(t + 1, done | sub));
    }
    memo[key] = best;
    return best;
  };
  return rec(1, 0);
}

}  // namespace oracle
