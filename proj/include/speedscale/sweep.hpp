#pragma once

// Seeded batches of competitive reports over instance families, with the
// max ratio aggregated per (alpha, policy).

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "speedscale/adversary.hpp"
#include "speedscale/parallel.hpp"
#include "speedscale/random_instances.hpp"
#include "speedscale/report.hpp"

namespace speedscale {

enum class InstanceFamily { kAdversarial, kRandom, kHeavyTail };

inline std::optional<InstanceFamily> parse_family(const std::string& s) {
  if (s == "adversarial") return InstanceFamily::kAdversarial;
  if (s == "random") return InstanceFamily::kRandom;
  if (s == "heavy-tail") return InstanceFamily::kHeavyTail;
  return std::nullopt;
}

struct SweepConfig {
  std::vector<double> alphas{2.0};
  InstanceFamily family = InstanceFamily::kRandom;
  std::vector<PolicyKind> policies{PolicyKind::kMinLcr};
  int samples = 100;                       // random families
  std::vector<std::int64_t> z_list{10, 100};  // adversarial family
  std::uint64_t seed = 1;
  RandomInstanceConfig random;
};

struct SweepAggregate {
  double alpha = 0.0;
  std::string policy;
  std::size_t runs = 0;
  double max_ratio = 0.0;
  std::string argmax_label;
  bool all_ledgers_sound = true;
};

struct SweepResult {
  std::vector<RatioReport> reports;  // sorted by (alpha, policy, label)
  std::vector<SweepAggregate> aggregates;
};

inline SweepResult sweep_experiment(const SweepConfig& cfg) {
  struct Task {
    double alpha;
    PolicyKind policy;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (double a : cfg.alphas) {
    std::size_t count = 0;
    if (cfg.family == InstanceFamily::kAdversarial)
      count = cfg.z_list.size() * (a > 2.0 ? 2 : 1);
    else
      count = static_cast<std::size_t>(std::max(0, cfg.samples));
    for (auto p : cfg.policies)
      for (std::size_t i = 0; i < count; ++i) tasks.push_back({a, p, i});
  }

  std::vector<RatioReport> reports(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t t) {
    const auto& task = tasks[t];
    const auto cost = CostModel::power_law(task.alpha);
    if (cfg.family == InstanceFamily::kAdversarial) {
      const std::size_t nz = cfg.z_list.size();
      const auto tmpl = task.index < nz ? gen_alpha2_lb_instance(cfg.z_list[task.index]) : gen_sqrt2_lb_instance(task.alpha);
      reports[t] = run_adversarial_game(task.policy, tmpl, cost).report;
    } else {
      auto rc = cfg.random;
      rc.values = cfg.family == InstanceFamily::kHeavyTail ? ValueDistribution::kHeavyTail : ValueDistribution::kUniform;
      // the instance depends on (seed, index) only, so every policy sees the same one
      const auto inst = random_instance(rc, cost, mix_seed(cfg.seed, task.index, static_cast<std::uint64_t>(task.alpha * 1e6)),
                                        "random#" + std::to_string(task.index));
      reports[t] = competitive_report(inst, task.policy, cost);
    }
  });

  std::stable_sort(reports.begin(), reports.end(), [](const RatioReport& a, const RatioReport& b) {
    return std::tuple(a.alpha.value_or(0.0), a.policy, a.label) < std::tuple(b.alpha.value_or(0.0), b.policy, b.label);
  });

  SweepResult res;
  std::map<std::pair<double, std::string>, SweepAggregate> agg;
  for (const auto& r : reports) {
    auto& a = agg[{r.alpha.value_or(0.0), r.policy}];
    a.alpha = r.alpha.value_or(0.0);
    a.policy = r.policy;
    if (a.runs == 0 || r.ratio > a.max_ratio) {
      a.max_ratio = r.ratio;
      a.argmax_label = r.label;
    }
    ++a.runs;
    a.all_ledgers_sound = a.all_ledgers_sound && r.ledger_sound;
  }
  for (auto& [k, v] : agg) res.aggregates.push_back(v);
  res.reports = std::move(reports);
  return res;
}

}  // namespace speedscale
