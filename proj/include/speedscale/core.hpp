#pragma once

// Domain types for slotted speed scaling: unit jobs with payoffs and
// (possibly infinite) deadlines, convex per-slot energy cost, schedules
// and profit accounting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace speedscale {

using JobId = std::int64_t;
using Slot = std::int64_t;

/// Absolute tolerance for all profit comparisons.
inline constexpr double kProfitTolerance = 1e-9;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, JobId job, Slot slot)
      : std::runtime_error(what), job_(job), slot_(slot) {}
  JobId job() const { return job_; }
  Slot slot() const { return slot_; }

 private:
  JobId job_;
  Slot slot_;
};

/// Relative deadline: a positive number of slots starting at arrival, or
/// infinite.
class Deadline {
 public:
  static Deadline infinite() { return Deadline(); }
  static Deadline slots(std::int64_t d) {
    if (d < 1) throw DomainError("deadline must be >= 1 slot");
    return Deadline(d);
  }

  bool is_infinite() const { return !slots_.has_value(); }
  std::int64_t count() const { return slots_.value(); }

  friend bool operator==(const Deadline&, const Deadline&) = default;

 private:
  Deadline() = default;
  explicit Deadline(std::int64_t d) : slots_(d) {}
  std::optional<std::int64_t> slots_;
};

struct Job {
  JobId id = 0;
  Slot arrival = 1;
  double value = 0.0;
  Deadline deadline = Deadline::infinite();

  /// Last slot in which the job may be processed; nullopt when infinite.
  std::optional<Slot> expiry() const {
    if (deadline.is_infinite()) return std::nullopt;
    return arrival + deadline.count() - 1;
  }

  bool available_at(Slot t) const {
    if (t < arrival) return false;
    auto e = expiry();
    return !e || t <= *e;
  }

  friend bool operator==(const Job&, const Job&) = default;
};

inline void validate_job(const Job& job) {
  if (job.id < 0) throw DomainError("job id must be non-negative");
  if (job.arrival < 1) throw DomainError("job arrival must be >= 1");
  if (!std::isfinite(job.value) || job.value < 0.0)
    throw DomainError("job value must be finite and non-negative");
}

/// Convex per-slot energy cost g(k) with g(0) = 0.
class CostModel {
 public:
  struct PowerLaw {
    double alpha;
  };
  /// g(0..n-1) given explicitly; beyond the table g is extended linearly
  /// with the last increment, which keeps it convex.
  struct Tabulated {
    std::vector<double> g;
  };

  static CostModel power_law(double alpha) {
    if (!std::isfinite(alpha) || alpha < 1.0)
      throw DomainError("power-law exponent must be >= 1");
    return CostModel(PowerLaw{alpha});
  }

  static CostModel tabulated(std::vector<double> g) {
    if (g.size() < 2) throw DomainError("tabulated cost needs g(0) and g(1)");
    if (g[0] != 0.0) throw DomainError("tabulated cost must have g(0) = 0");
    double prev_inc = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
      if (!std::isfinite(g[k])) throw DomainError("tabulated cost must be finite");
      const double inc = g[k] - g[k - 1];
      if (inc <= 0.0)
        throw DomainError("tabulated cost must have positive increments at k=" +
                          std::to_string(k));
      if (inc < prev_inc - 1e-12)
        throw DomainError("tabulated cost is not convex at k=" + std::to_string(k));
      prev_inc = inc;
    }
    return CostModel(Tabulated{std::move(g)});
  }

  double g(std::int64_t k) const {
    if (k < 0) throw DomainError("g(k) requires k >= 0");
    if (k == 0) return 0.0;
    if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
      return std::pow(static_cast<double>(k), p->alpha);
    }
    const auto& tab = std::get<Tabulated>(kind_).g;
    const auto n = static_cast<std::int64_t>(tab.size());
    if (k < n) return tab[static_cast<std::size_t>(k)];
    const double last_inc = tab[n - 1] - tab[n - 2];
    return tab[n - 1] + static_cast<double>(k - (n - 1)) * last_inc;
  }

  bool is_power_law() const { return std::holds_alternative<PowerLaw>(kind_); }

  std::optional<double> alpha() const {
    if (const auto* p = std::get_if<PowerLaw>(&kind_)) return p->alpha;
    return std::nullopt;
  }

  std::string describe() const {
    if (auto a = alpha()) return "power-law(alpha=" + std::to_string(*a) + ")";
    return "tabulated(" + std::to_string(std::get<Tabulated>(kind_).g.size()) + ")";
  }

 private:
  explicit CostModel(std::variant<PowerLaw, Tabulated> kind) : kind_(std::move(kind)) {}
  std::variant<PowerLaw, Tabulated> kind_;
};

/// Marginal energy of the k-th job in a slot, g(k) - g(k-1).
inline double effective_cost(const CostModel& cost, std::int64_t k) {
  if (k < 1) throw DomainError("effective_cost requires k >= 1");
  return cost.g(k) - cost.g(k - 1);
}

/// A full arrival sequence with its true deadlines. Jobs are kept sorted by
/// (arrival, id) and ids are unique.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Job> jobs, std::string label = {}) : jobs_(std::move(jobs)), label_(std::move(label)) {
    std::set<JobId> ids;
    for (const auto& j : jobs_) {
      validate_job(j);
      if (!ids.insert(j.id).second)
        throw DomainError("duplicate job id " + std::to_string(j.id));
    }
    std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) {
      return std::pair(a.arrival, a.id) < std::pair(b.arrival, b.id);
    });
    for (std::size_t i = 0; i < jobs_.size(); ++i) index_[jobs_[i].id] = i;
  }

  const std::vector<Job>& jobs() const { return jobs_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  std::size_t size() const { return jobs_.size(); }
  bool empty() const { return jobs_.empty(); }

  const Job* find(JobId id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &jobs_[it->second];
  }

  const Job& job(JobId id) const {
    if (const Job* j = find(id)) return *j;
    throw DomainError("unknown job id " + std::to_string(id));
  }

  Slot last_arrival() const { return jobs_.empty() ? 0 : jobs_.back().arrival; }

 private:
  std::vector<Job> jobs_;
  std::string label_;
  std::unordered_map<JobId, std::size_t> index_;
};

/// Value order used everywhere a pool is ranked: non-increasing value,
/// ties by earlier arrival, then smaller id.
inline bool value_order(const Job& a, const Job& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.arrival != b.arrival) return a.arrival < b.arrival;
  return a.id < b.id;
}

inline std::vector<Job> available_jobs(const Instance& instance, Slot slot,
                                       const std::set<JobId>& already_processed) {
  if (slot < 1) throw DomainError("slot must be >= 1");
  std::vector<Job> out;
  for (const auto& j : instance.jobs()) {
    if (j.arrival > slot) break;
    if (j.available_at(slot) && !already_processed.contains(j.id)) out.push_back(j);
  }
  std::sort(out.begin(), out.end(), value_order);
  return out;
}

struct InstanceUnion {
  Instance instance;
  /// merged id -> (source index 0 or 1, original id)
  std::map<JobId, std::pair<int, JobId>> provenance;
};

/// Per-slot multiset union. Merged ids are 0..n-1 in (arrival, source,
/// original id) order.
inline InstanceUnion union_instances(const Instance& a, const Instance& b) {
  struct Tagged {
    Job job;
    int source;
  };
  std::vector<Tagged> all;
  all.reserve(a.size() + b.size());
  for (const auto& j : a.jobs()) all.push_back({j, 0});
  for (const auto& j : b.jobs()) all.push_back({j, 1});
  std::stable_sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
    return std::tuple(x.job.arrival, x.source, x.job.id) < std::tuple(y.job.arrival, y.source, y.job.id);
  });
  InstanceUnion out;
  std::vector<Job> jobs;
  jobs.reserve(all.size());
  JobId next = 0;
  for (const auto& t : all) {
    Job j = t.job;
    out.provenance[next] = {t.source, j.id};
    j.id = next++;
    jobs.push_back(j);
  }
  std::string label = a.label().empty() ? b.label() : (b.label().empty() ? a.label() : a.label() + "+" + b.label());
  out.instance = Instance(std::move(jobs), std::move(label));
  return out;
}

/// One row of the min-LCR audit ledger for processing the top-i jobs.
struct LcrBreakdown {
  std::size_t i = 0;
  double M = 0.0;  // offline profit from the top-i jobs, one per later slot
  double P = 0.0;  // online profit from processing the top-i now
  double c_greedy = 0.0;
  double lcr = 0.0;
};

struct SlotDecision {
  Slot slot = 0;
  std::vector<JobId> processed;
  double payoff_sum = 0.0;
  double energy = 0.0;
  double profit = 0.0;
  // Audit fields filled by the online harness; empty for offline witnesses.
  std::size_t m = 0;
  std::optional<double> chosen_lcr;
  std::vector<LcrBreakdown> ledger;
};

struct Trace {
  std::vector<SlotDecision> decisions;
  double total_profit = 0.0;
};

inline SlotDecision make_decision(const Instance& instance, const CostModel& cost, Slot slot,
                                  std::vector<JobId> processed) {
  SlotDecision d;
  d.slot = slot;
  for (JobId id : processed) d.payoff_sum += instance.job(id).value;
  d.energy = cost.g(static_cast<std::int64_t>(processed.size()));
  d.profit = d.payoff_sum - d.energy;
  d.processed = std::move(processed);
  return d;
}

/// Recomputes the profit of a trace from scratch, validating availability
/// and uniqueness; cached fields in the trace are ignored.
inline double evaluate_trace(const Instance& instance, const Trace& trace, const CostModel& cost) {
  std::set<JobId> seen;
  double total = 0.0;
  Slot prev = std::numeric_limits<Slot>::min();
  for (const auto& d : trace.decisions) {
    if (d.slot < 1) throw ValidationError("decision at slot < 1", -1, d.slot);
    if (d.slot <= prev)
      throw ValidationError("decisions not strictly ordered by slot at slot " + std::to_string(d.slot), -1,
                            d.slot);
    prev = d.slot;
    double payoff = 0.0;
    for (JobId id : d.processed) {
      const Job* job = instance.find(id);
      if (!job)
        throw ValidationError("job " + std::to_string(id) + " not in instance (slot " + std::to_string(d.slot) + ")",
                              id, d.slot);
      if (!job->available_at(d.slot))
        throw ValidationError(
            "job " + std::to_string(id) + " processed outside its window at slot " + std::to_string(d.slot), id,
            d.slot);
      if (!seen.insert(id).second)
        throw ValidationError("job " + std::to_string(id) + " processed twice (again at slot " +
                                  std::to_string(d.slot) + ")",
                              id, d.slot);
      payoff += job->value;
    }
    total += payoff - cost.g(static_cast<std::int64_t>(d.processed.size()));
  }
  return total;
}

}  // namespace speedscale
