#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "speedscale/core.hpp"
#include "speedscale/offline.hpp"
#include "speedscale/policies.hpp"

namespace speedscale {

struct SlotLcr {
  Slot slot = 0;
  std::size_t chosen = 0;
  double lcr = 0.0;
};

/// Offline vs online profit on one instance, with the per-slot LCR ledger.
struct RatioReport {
  std::string label;
  std::string policy;
  std::optional<double> alpha;
  double off_profit = 0.0;
  double alg_profit = 0.0;
  double ratio = 1.0;
  bool ratio_infinite = false;
  std::vector<SlotLcr> per_slot_lcr;
  double max_lcr = 1.0;
  // C_OFF / C_ALG <= max LCR (+1e-9). Checked for the shipped policies,
  // which all process a top-i prefix with 1 <= i <= m.
  bool ledger_checked = false;
  bool ledger_sound = true;
  Trace trace;
  Trace offline_witness;
};

/// off/alg with the conventions 0/0 = 1 and x/0 = +inf for x > 0 (also
/// used when the online profit is negative).
inline double profit_ratio(double off, double alg, bool* infinite = nullptr) {
  bool inf = false;
  double r = 1.0;
  if (alg > kProfitTolerance) {
    r = off / alg;
  } else if (off > kProfitTolerance || alg < -kProfitTolerance) {
    inf = true;
    r = std::numeric_limits<double>::infinity();
  }
  if (infinite) *infinite = inf;
  return r;
}

inline RatioReport assemble_report(const Instance& instance, const std::string& policy_name, const CostModel& cost,
                                   Trace trace, bool check_ledger) {
  RatioReport r;
  r.label = instance.label();
  r.policy = policy_name;
  r.alpha = cost.alpha();
  auto off = solve_offline(instance, cost);
  r.off_profit = off.profit;
  r.offline_witness = std::move(off.witness);
  r.alg_profit = evaluate_trace(instance, trace, cost);
  r.ratio = profit_ratio(r.off_profit, r.alg_profit, &r.ratio_infinite);

  bool any = false;
  for (const auto& d : trace.decisions) {
    if (!d.chosen_lcr) continue;
    r.per_slot_lcr.push_back({d.slot, d.processed.size(), *d.chosen_lcr});
    r.max_lcr = any ? std::max(r.max_lcr, *d.chosen_lcr) : *d.chosen_lcr;
    any = true;
  }
  // With no LCR-bearing slot the ledger is vacuous; max_lcr stays 1.
  r.ledger_checked = check_ledger;
  if (check_ledger && !r.ratio_infinite) r.ledger_sound = r.ratio <= r.max_lcr + 1e-9;
  r.trace = std::move(trace);
  return r;
}

/// Runs the policy, solves the offline optimum and checks the
/// ratio <= max-LCR chain.
inline RatioReport competitive_report(const Instance& instance, PolicyKind kind, const CostModel& cost) {
  return assemble_report(instance, to_string(kind), cost, run_policy(instance, kind, cost), true);
}

inline RatioReport competitive_report(const Instance& instance, const Policy& policy, const std::string& name,
                                      const CostModel& cost) {
  return assemble_report(instance, name, cost, run_policy(instance, policy, cost), false);
}

}  // namespace speedscale
