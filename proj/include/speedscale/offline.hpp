#pragma once

// Clairvoyant optimum C_OFF: exact max-profit schedule via min-cost flow,
// with an exhaustive enumerator for cross-checking small cases.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "speedscale/core.hpp"
#include "speedscale/min_cost_flow.hpp"

namespace speedscale {

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct OfflineJob {
  JobId id = 0;
  double value = 0.0;
  Slot first = 1;  // arrival
  Slot last = 1;   // expiry, already truncated to the horizon
};

struct OfflineProblem {
  std::vector<OfflineJob> jobs;
  Slot horizon = 0;
  CostModel cost = CostModel::power_law(2.0);
};

/// Infinite deadlines are truncated to max(last finite expiry, last arrival)
/// + (number of infinite-deadline jobs): past that point only
/// infinite-deadline jobs remain and one slot each always suffices.
inline OfflineProblem make_offline_problem(const Instance& instance, const CostModel& cost) {
  OfflineProblem p{{}, 0, cost};
  Slot finite_end = instance.last_arrival();
  std::int64_t infinite = 0;
  for (const auto& j : instance.jobs()) {
    if (auto e = j.expiry()) finite_end = std::max(finite_end, *e);
    else ++infinite;
  }
  p.horizon = finite_end + infinite;
  for (const auto& j : instance.jobs()) {
    auto e = j.expiry();
    p.jobs.push_back({j.id, j.value, j.arrival, e ? *e : p.horizon});
  }
  return p;
}

struct OfflineSolution {
  double profit = 0.0;
  Trace witness;
};

namespace detail {

inline Trace trace_from_assignment(const std::map<Slot, std::vector<JobId>>& by_slot,
                                   const std::map<JobId, double>& values, const CostModel& cost) {
  Trace t;
  for (const auto& [slot, ids] : by_slot) {
    if (ids.empty()) continue;
    SlotDecision d;
    d.slot = slot;
    d.processed = ids;
    std::sort(d.processed.begin(), d.processed.end());
    for (JobId id : d.processed) d.payoff_sum += values.at(id);
    d.energy = cost.g(static_cast<std::int64_t>(ids.size()));
    d.profit = d.payoff_sum - d.energy;
    t.total_profit += d.profit;
    t.decisions.push_back(std::move(d));
  }
  return t;
}

}  // namespace detail

/// Network: source -> job (cap 1, cost -v), job -> slot group for every
/// group inside the job's window, group -> sink as parallel arcs with costs
/// c_1 <= c_2 <= ... Consecutive slots that see exactly the same set of
/// live jobs are merged into one group of L slots; its k-th parallel arc
/// then has capacity L, which by convexity is the same as L separate slots
/// filled evenly.
inline OfflineSolution solve_offline_flow(const OfflineProblem& problem) {
  OfflineSolution sol;
  if (problem.jobs.empty()) return sol;

  std::set<Slot> cuts{problem.horizon + 1};
  double vmax = 0.0;
  for (const auto& j : problem.jobs) {
    if (j.first > j.last || j.first < 1 || j.last > problem.horizon)
      throw DomainError("offline job " + std::to_string(j.id) + " has an invalid window");
    cuts.insert(j.first);
    cuts.insert(j.last + 1);
    vmax = std::max(vmax, j.value);
  }
  struct Group {
    Slot start, end;  // inclusive
  };
  std::vector<Group> groups;
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) groups.push_back({*it, *std::next(it) - 1});

  const int n_jobs = static_cast<int>(problem.jobs.size());
  const int source = 0;
  const int first_job = 1;
  const int first_group = first_job + n_jobs;
  const int sink = first_group + static_cast<int>(groups.size());
  MinCostFlow<int, double> net(sink + 1);

  std::vector<std::vector<int>> job_arcs(problem.jobs.size());  // arc ids job -> group
  std::vector<std::vector<int>> job_arc_group(problem.jobs.size());
  std::vector<int> live(groups.size(), 0);
  for (int i = 0; i < n_jobs; ++i) {
    const auto& j = problem.jobs[static_cast<std::size_t>(i)];
    net.add_arc(source, first_job + i, 1, -j.value);
  }
  for (int i = 0; i < n_jobs; ++i) {
    const auto& j = problem.jobs[static_cast<std::size_t>(i)];
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      if (groups[gi].start >= j.first && groups[gi].end <= j.last) {
        job_arcs[static_cast<std::size_t>(i)].push_back(
            net.add_arc(first_job + i, first_group + static_cast<int>(gi), 1, 0.0));
        job_arc_group[static_cast<std::size_t>(i)].push_back(static_cast<int>(gi));
        ++live[gi];
      }
    }
  }
  const CostModel& cost = problem.cost;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (live[gi] == 0) continue;
    const auto len = groups[gi].end - groups[gi].start + 1;
    const auto levels = (live[gi] + len - 1) / len;
    for (std::int64_t k = 1; k <= levels; ++k) {
      const double c = effective_cost(cost, k);
      // an arc at least as dear as the best payoff never ends a profitable path
      if (c >= vmax) break;
      net.add_arc(first_group + static_cast<int>(gi), sink, static_cast<int>(std::min<std::int64_t>(len, live[gi])), c);
    }
  }

  net.min_cost_flow(source, sink, 1e-12);

  std::map<Slot, std::vector<JobId>> by_slot;
  std::map<JobId, double> values;
  std::vector<std::vector<JobId>> in_group(groups.size());
  for (int i = 0; i < n_jobs; ++i) {
    const auto& j = problem.jobs[static_cast<std::size_t>(i)];
    values[j.id] = j.value;
    for (std::size_t a = 0; a < job_arcs[static_cast<std::size_t>(i)].size(); ++a)
      if (net.arc(job_arcs[static_cast<std::size_t>(i)][a]).flow > 0)
        in_group[static_cast<std::size_t>(job_arc_group[static_cast<std::size_t>(i)][a])].push_back(j.id);
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    auto& ids = in_group[gi];
    std::sort(ids.begin(), ids.end());
    const auto len = groups[gi].end - groups[gi].start + 1;
    for (std::size_t r = 0; r < ids.size(); ++r)
      by_slot[groups[gi].start + static_cast<Slot>(r) % len].push_back(ids[r]);
  }
  sol.witness = detail::trace_from_assignment(by_slot, values, cost);
  sol.profit = sol.witness.total_profit;
  return sol;
}

/// Tries every per-job choice in {drop} + window slots. Refuses problems
/// with more than 10 jobs or a horizon beyond 8 slots.
inline OfflineSolution solve_offline_bruteforce(const OfflineProblem& problem) {
  if (problem.jobs.size() > 10)
    throw SizeError("brute force refuses " + std::to_string(problem.jobs.size()) + " jobs (limit 10)");
  if (problem.horizon > 8)
    throw SizeError("brute force refuses horizon " + std::to_string(problem.horizon) + " (limit 8)");

  const auto& jobs = problem.jobs;
  const auto h = static_cast<std::size_t>(std::max<Slot>(problem.horizon, 0));
  std::vector<double> marginal(jobs.size() + 2);
  for (std::size_t k = 1; k < marginal.size(); ++k) marginal[k] = effective_cost(problem.cost, static_cast<std::int64_t>(k));

  std::vector<int> count(h + 2, 0);
  std::vector<Slot> choice(jobs.size(), 0), best_choice(jobs.size(), 0);
  double best = 0.0;

  std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double profit) {
    if (i == jobs.size()) {
      if (profit > best) {
        best = profit;
        best_choice = choice;
      }
      return;
    }
    choice[i] = 0;
    dfs(i + 1, profit);
    for (Slot t = jobs[i].first; t <= jobs[i].last; ++t) {
      auto& c = count[static_cast<std::size_t>(t)];
      ++c;
      choice[i] = t;
      dfs(i + 1, profit + jobs[i].value - marginal[static_cast<std::size_t>(c)]);
      --c;
    }
    choice[i] = 0;
  };
  dfs(0, 0.0);

  std::map<Slot, std::vector<JobId>> by_slot;
  std::map<JobId, double> values;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    values[jobs[i].id] = jobs[i].value;
    if (best_choice[i] != 0) by_slot[best_choice[i]].push_back(jobs[i].id);
  }
  OfflineSolution sol;
  sol.witness = detail::trace_from_assignment(by_slot, values, problem.cost);
  sol.profit = best;
  return sol;
}

inline OfflineSolution solve_offline(const Instance& instance, const CostModel& cost) {
  return solve_offline_flow(make_offline_problem(instance, cost));
}

}  // namespace speedscale
