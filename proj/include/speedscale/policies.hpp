#pragma once

// Deadline-blind online policies: min-LCR, sim-LCR and Greedy, plus the
// slot-by-slot harness that feeds them.

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "speedscale/core.hpp"

namespace speedscale {

class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Candidate {
  JobId id = 0;
  double value = 0.0;
};

/// What an online policy may see at a slot: the live, unprocessed pool
/// ranked by value. There is deliberately no way to reach a deadline from
/// here.
struct PolicyView {
  Slot slot = 0;
  std::vector<Candidate> candidates;

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(candidates.size());
    for (const auto& c : candidates) v.push_back(c.value);
    return v;
  }
};

inline PolicyView make_view(Slot slot, std::span<const double> sorted_values) {
  PolicyView view{slot, {}};
  JobId id = 0;
  for (double v : sorted_values) view.candidates.push_back({id++, v});
  return view;
}

/// Number of top jobs that are each individually profitable:
/// the largest j with v(j) - c_j > 0, or 0.
inline std::size_t compute_m(std::span<const double> sorted_values, const CostModel& cost) {
  std::size_t m = 0;
  for (std::size_t j = 1; j <= sorted_values.size(); ++j) {
    if (sorted_values[j - 1] - effective_cost(cost, static_cast<std::int64_t>(j)) > 0.0) {
      m = j;
    } else {
      break;  // v(j) - c_j is non-increasing in j
    }
  }
  return m;
}

inline std::size_t compute_m(const PolicyView& view, const CostModel& cost) {
  const auto v = view.values();
  return compute_m(std::span<const double>(v), cost);
}

/// Best single-slot profit from a value-sorted pool: max over j of the top-j
/// sum minus g(j), with j = 0 allowed.
inline double inner_greedy_profit(std::span<const double> leftover_values, const CostModel& cost) {
  double best = 0.0;
  double prefix = 0.0;
  for (std::size_t j = 1; j <= leftover_values.size(); ++j) {
    prefix += leftover_values[j - 1];
    best = std::max(best, prefix - cost.g(static_cast<std::int64_t>(j)));
  }
  return best;
}

inline LcrBreakdown lcr_breakdown(std::span<const double> sorted_values, const CostModel& cost, std::size_t i,
                                  std::size_t m) {
  if (i < 1 || i > m || m > sorted_values.size())
    throw DomainError("lcr_breakdown requires 1 <= i <= m (i=" + std::to_string(i) + ", m=" + std::to_string(m) +
                      ")");
  const double top = std::accumulate(sorted_values.begin(), sorted_values.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
  LcrBreakdown b;
  b.i = i;
  b.M = top - static_cast<double>(i) * cost.g(1);
  b.P = top - cost.g(static_cast<std::int64_t>(i));
  b.c_greedy = inner_greedy_profit(sorted_values.subspan(i), cost);
  b.lcr = (b.M + b.c_greedy) / b.P;
  return b;
}

inline LcrBreakdown lcr_breakdown(const PolicyView& view, const CostModel& cost, std::size_t i) {
  const auto v = view.values();
  const std::span<const double> s(v);
  return lcr_breakdown(s, cost, i, compute_m(s, cost));
}

/// Full LCR ledger for i = 1..m; shares the prefix sums across rows.
inline std::vector<LcrBreakdown> lcr_ledger(std::span<const double> sorted_values, const CostModel& cost,
                                            std::size_t m) {
  std::vector<LcrBreakdown> ledger;
  if (m == 0) return ledger;
  const std::size_t n = sorted_values.size();
  std::vector<double> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[k] = cost.g(static_cast<std::int64_t>(k));
  // best_suffix[i] = inner greedy profit of the pool with its top-i removed
  std::vector<double> best_suffix(n + 1, 0.0);
  for (std::size_t i = 0; i <= m; ++i) {
    double best = 0.0, prefix = 0.0;
    for (std::size_t j = 1; i + j <= n; ++j) {
      prefix += sorted_values[i + j - 1];
      best = std::max(best, prefix - g[j]);
    }
    best_suffix[i] = best;
  }
  double top = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    top += sorted_values[i - 1];
    LcrBreakdown b;
    b.i = i;
    b.M = top - static_cast<double>(i) * g[1];
    b.P = top - g[i];
    b.c_greedy = best_suffix[i];
    b.lcr = (b.M + b.c_greedy) / b.P;
    ledger.push_back(b);
  }
  return ledger;
}

struct SlotChoice {
  std::size_t count = 0;
  std::vector<LcrBreakdown> ledger;
};

/// argmin over i = 1..m of LCR_i; ties go to the smallest i.
inline SlotChoice min_lcr_decide(const PolicyView& view, const CostModel& cost) {
  const auto v = view.values();
  const std::span<const double> s(v);
  SlotChoice choice;
  choice.ledger = lcr_ledger(s, cost, compute_m(s, cost));
  double best = 0.0;
  for (const auto& b : choice.ledger) {
    if (choice.count == 0 || b.lcr < best - 1e-12) {
      best = b.lcr;
      choice.count = b.i;
    }
  }
  return choice;
}

/// Root in (0,1) of x^alpha + x^(alpha-1) - 1, by bisection. Cached per
/// alpha.
inline double beta_root(double alpha) {
  if (!(alpha >= 1.0 + 1e-9) || !std::isfinite(alpha))
    throw DomainError("beta_root requires alpha >= 1 + 1e-9");
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  }
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = std::pow(mid, alpha) + std::pow(mid, alpha - 1.0) - 1.0;
    (f < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  std::lock_guard lock(mu);
  cache.emplace(alpha, root);
  return root;
}

/// Evaluates only i = floor(beta m) and ceil(beta m), clamped to [1, m],
/// and keeps the one with lower LCR (smaller count on ties).
inline SlotChoice sim_lcr_decide(const PolicyView& view, const CostModel& cost) {
  const auto alpha = cost.alpha();
  if (!alpha) throw UnsupportedModelError("sim-LCR requires a power-law cost g(k) = k^alpha");
  const auto v = view.values();
  const std::span<const double> s(v);
  const std::size_t m = compute_m(s, cost);
  SlotChoice choice;
  if (m == 0) return choice;
  const double bm = beta_root(*alpha) * static_cast<double>(m);
  const auto lo = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(bm)), 1, m);
  const auto hi = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(bm)), 1, m);
  choice.ledger.push_back(lcr_breakdown(s, cost, lo, m));
  if (hi != lo) choice.ledger.push_back(lcr_breakdown(s, cost, hi, m));
  choice.count = lo;
  if (choice.ledger.size() == 2 && choice.ledger[1].lcr < choice.ledger[0].lcr - 1e-12) choice.count = hi;
  return choice;
}

/// Always processes all m individually profitable jobs.
inline SlotChoice greedy_decide(const PolicyView& view, const CostModel& cost) {
  const auto v = view.values();
  const std::span<const double> s(v);
  SlotChoice choice;
  choice.count = compute_m(s, cost);
  if (choice.count > 0) choice.ledger.push_back(lcr_breakdown(s, cost, choice.count, choice.count));
  return choice;
}

/// A policy maps a deadline-blind view to how many of the top-ranked jobs
/// to process. Shipped policies never look at view.slot; run_policy relies
/// on decisions being a function of the view.
using Policy = std::function<SlotChoice(const PolicyView&, const CostModel&)>;

enum class PolicyKind { kMinLcr, kSimLcr, kGreedy };

inline const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names{"min-lcr", "sim-lcr", "greedy"};
  return names;
}

inline std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kMinLcr: return "min-lcr";
    case PolicyKind::kSimLcr: return "sim-lcr";
    case PolicyKind::kGreedy: return "greedy";
  }
  return "unknown";
}

inline std::optional<PolicyKind> parse_policy(const std::string& name) {
  if (name == "min-lcr") return PolicyKind::kMinLcr;
  if (name == "sim-lcr") return PolicyKind::kSimLcr;
  if (name == "greedy") return PolicyKind::kGreedy;
  return std::nullopt;
}

inline Policy make_policy(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kMinLcr: return min_lcr_decide;
    case PolicyKind::kSimLcr: return sim_lcr_decide;
    case PolicyKind::kGreedy: return greedy_decide;
  }
  throw DomainError("unknown policy kind");
}

/// Processes exactly min(k, pool size) top jobs every slot. Not one of the
/// shipped algorithms; used to drive adversarial games.
inline Policy fixed_count_policy(std::size_t k) {
  return [k](const PolicyView& view, const CostModel&) {
    SlotChoice c;
    c.count = std::min(k, view.candidates.size());
    return c;
  };
}

inline PolicyView view_of(Slot slot, const std::vector<Job>& pool) {
  PolicyView view{slot, {}};
  view.candidates.reserve(pool.size());
  for (const auto& j : pool) view.candidates.push_back({j.id, j.value});
  return view;
}

/// Runs a policy over an instance. Only this harness sees deadlines, to
/// decide availability; the policy sees a PolicyView.
inline Trace run_policy(const Instance& instance, const Policy& policy, const CostModel& cost) {
  Trace trace;
  std::set<JobId> processed;
  const auto& jobs = instance.jobs();
  std::size_t next_arrival = 0;
  Slot t = jobs.empty() ? 1 : jobs.front().arrival;
  std::vector<Job> pool;

  while (true) {
    while (next_arrival < jobs.size() && jobs[next_arrival].arrival <= t) ++next_arrival;
    pool.erase(pool.begin(), pool.end());
    for (std::size_t i = 0; i < next_arrival; ++i)
      if (jobs[i].available_at(t) && !processed.contains(jobs[i].id)) pool.push_back(jobs[i]);
    std::sort(pool.begin(), pool.end(), value_order);

    const bool more_arrivals = next_arrival < jobs.size();
    if (pool.empty()) {
      if (!more_arrivals) break;
      t = jobs[next_arrival].arrival;
      continue;
    }

    const PolicyView view = view_of(t, pool);
    SlotChoice choice = policy(view, cost);
    if (choice.count > pool.size())
      throw DomainError("policy chose more jobs than available at slot " + std::to_string(t));

    std::vector<JobId> chosen;
    for (std::size_t i = 0; i < choice.count; ++i) chosen.push_back(pool[i].id);
    SlotDecision d = make_decision(instance, cost, t, chosen);
    const auto values = view.values();
    d.m = compute_m(std::span<const double>(values), cost);
    if (choice.count >= 1 && choice.count <= d.m) {
      auto it = std::find_if(choice.ledger.begin(), choice.ledger.end(),
                             [&](const LcrBreakdown& b) { return b.i == choice.count; });
      d.chosen_lcr = it != choice.ledger.end() ? it->lcr
                                               : lcr_breakdown(std::span<const double>(values), cost, choice.count, d.m).lcr;
    }
    d.ledger = std::move(choice.ledger);
    for (JobId id : chosen) processed.insert(id);
    trace.total_profit += d.profit;
    trace.decisions.push_back(std::move(d));

    if (chosen.empty()) {
      // An idle slot whose pool has only infinite deadlines repeats
      // unchanged until the next arrival (or forever).
      const bool all_infinite = std::all_of(pool.begin(), pool.end(), [](const Job& j) { return !j.expiry(); });
      if (all_infinite) {
        if (!more_arrivals) break;
        t = jobs[next_arrival].arrival;
        continue;
      }
    }
    ++t;
  }
  return trace;
}

inline Trace run_policy(const Instance& instance, PolicyKind kind, const CostModel& cost) {
  return run_policy(instance, make_policy(kind), cost);
}

}  // namespace speedscale
