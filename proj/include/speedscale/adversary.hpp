#pragma once

// Lower-bound constructions and the adaptive deadline adversary: every
// template job arrives at slot 1 with its deadline left open; once the
// online policy commits at slot 1, the jobs it picked get an infinite
// deadline and every other job expires immediately.

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "speedscale/core.hpp"
#include "speedscale/format.hpp"
#include "speedscale/policies.hpp"
#include "speedscale/report.hpp"

namespace speedscale {

class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TemplateJob {
  JobId id = 0;
  Slot arrival = 1;
  double value = 0.0;
};

/// An arrival sequence whose deadlines are still undecided.
struct InstanceTemplate {
  std::vector<TemplateJob> jobs;
  std::string label;
};

/// 2z jobs of value 2z at slot 1. Under g(k) = k^2 at most z of them are
/// individually profitable in one slot.
inline InstanceTemplate gen_alpha2_lb_instance(std::int64_t z) {
  if (z < 1) throw DomainError("alpha2 lower-bound template needs z >= 1");
  InstanceTemplate t;
  t.label = "alpha2-lb:z=" + std::to_string(z);
  for (std::int64_t i = 0; i < 2 * z; ++i) t.jobs.push_back({i, 1, static_cast<double>(2 * z)});
  return t;
}

/// Common job value of the four-job construction,
/// (1 + 1/sqrt2) * (g(2) - sqrt2 * g(1)).
inline double sqrt2_job_value(const CostModel& cost) {
  return (1.0 + 1.0 / std::numbers::sqrt2) * (cost.g(2) - std::numbers::sqrt2 * cost.g(1));
}

/// Four equal jobs at slot 1 valued so that a third job in the slot is
/// already unprofitable (v < g(3) - g(2)).
inline InstanceTemplate gen_sqrt2_lb_instance(double alpha) {
  if (!(alpha > 2.0)) throw DomainError("sqrt2 lower-bound template needs alpha > 2");
  const auto cost = CostModel::power_law(alpha);
  const double v = sqrt2_job_value(cost);
  if (!(v < effective_cost(cost, 3)))
    throw ConstructionError("sqrt2 template: v = " + std::to_string(v) + " is not below g(3) - g(2)");
  InstanceTemplate t;
  t.label = "sqrt2-lb:alpha=" + format_number(alpha);
  for (JobId i = 0; i < 4; ++i) t.jobs.push_back({i, 1, v});
  return t;
}

/// Fixes deadlines once: chosen jobs never expire, all others expire at
/// their arrival slot.
inline Instance adversary_finalize(const InstanceTemplate& tmpl, const std::set<JobId>& chosen) {
  std::set<JobId> ids;
  for (const auto& j : tmpl.jobs) ids.insert(j.id);
  for (JobId id : chosen)
    if (!ids.contains(id)) throw DomainError("chosen job " + std::to_string(id) + " is not in the template");
  std::vector<Job> jobs;
  for (const auto& j : tmpl.jobs)
    jobs.push_back({j.id, j.arrival, j.value, chosen.contains(j.id) ? Deadline::infinite() : Deadline::slots(1)});
  return Instance(std::move(jobs), tmpl.label);
}

/// Stateful form of the slot-1 adversary. It shows the opening view,
/// observes which jobs the policy takes, and commits every deadline exactly
/// once.
class AdaptiveAdversary {
 public:
  explicit AdaptiveAdversary(InstanceTemplate tmpl) : tmpl_(std::move(tmpl)) {
    for (const auto& j : tmpl_.jobs) {
      if (j.arrival != 1) throw DomainError("adaptive adversary only adapts at slot 1; all template jobs must arrive at slot 1");
      pending_.push_back(j);
    }
  }

  PolicyView opening_view() const {
    std::vector<Job> pool;
    for (const auto& j : tmpl_.jobs) pool.push_back({j.id, j.arrival, j.value, Deadline::infinite()});
    std::sort(pool.begin(), pool.end(), value_order);
    return view_of(1, pool);
  }

  Instance commit(const std::set<JobId>& chosen) {
    if (finalized_) throw std::logic_error("adversary deadlines were already committed");
    Instance inst = adversary_finalize(tmpl_, chosen);
    transcript_ = chosen;
    committed_ = inst.jobs();
    pending_.clear();
    finalized_ = true;
    return inst;
  }

  bool finalized() const { return finalized_; }
  const std::vector<TemplateJob>& pending() const { return pending_; }
  const std::vector<Job>& committed() const { return committed_; }
  const std::set<JobId>& transcript() const { return transcript_; }

 private:
  InstanceTemplate tmpl_;
  std::vector<TemplateJob> pending_;
  std::vector<Job> committed_;
  std::set<JobId> transcript_;
  bool finalized_ = false;
};

struct GameOutcome {
  RatioReport report;
  std::size_t chosen_count = 0;
  Instance instance;
};

/// Plays policy vs adaptive adversary and reports C_OFF / C_ALG on the
/// finalized instance.
inline GameOutcome run_adversarial_game(const Policy& policy, const std::string& policy_name,
                                        const InstanceTemplate& tmpl, const CostModel& cost, bool check_ledger) {
  AdaptiveAdversary adversary(tmpl);
  const PolicyView view = adversary.opening_view();
  const SlotChoice first = policy(view, cost);
  std::set<JobId> chosen;
  for (std::size_t i = 0; i < first.count && i < view.candidates.size(); ++i) chosen.insert(view.candidates[i].id);

  GameOutcome out;
  out.chosen_count = chosen.size();
  out.instance = adversary.commit(chosen);
  Trace trace = run_policy(out.instance, policy, cost);

  // The policy cannot tell the finalized instance from the template at
  // slot 1, so it must repeat its choice.
  std::set<JobId> replay;
  if (!trace.decisions.empty() && trace.decisions.front().slot == 1)
    replay.insert(trace.decisions.front().processed.begin(), trace.decisions.front().processed.end());
  if (replay != chosen) throw std::logic_error("policy is not deterministic in its slot-1 view");

  out.report = assemble_report(out.instance, policy_name, cost, std::move(trace), check_ledger);
  return out;
}

inline GameOutcome run_adversarial_game(PolicyKind kind, const InstanceTemplate& tmpl, const CostModel& cost) {
  return run_adversarial_game(make_policy(kind), to_string(kind), tmpl, cost, true);
}

/// Closed-form ratio of the 2z-job game at g(k) = k^2 when the policy takes
/// k jobs: (z^2 + 2zk - k) / (2zk - k^2).
inline double alpha2_game_ratio(double z, double k) { return (z * z + 2 * z * k - k) / (2 * z * k - k * k); }

inline double golden_ratio_plus_one() { return (3.0 + std::sqrt(5.0)) / 2.0; }
inline double golden_delta() { return (std::sqrt(5.0) - 1.0) / 2.0; }

}  // namespace speedscale
