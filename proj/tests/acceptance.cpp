// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. An optional argument names the CSV file for the lower-bound
// curve (default lower_bound_curve.csv in the working directory).

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "speedscale/speedscale.hpp"

using namespace speedscale;

namespace {

constexpr int kBatterySize = 10000;
constexpr std::uint64_t kBatterySeed = 5;

const double kPhi1 = golden_ratio_plus_one();
const double kSqrt2Plus1 = std::numbers::sqrt2 + 1.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) { return format_number(x); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

Instance battery_instance(int i, const CostModel& cost) {
  RandomInstanceConfig cfg;
  cfg.n_max = 30;
  if (i % 4 == 3) cfg.values = ValueDistribution::kHeavyTail;
  return random_instance(cfg, cost, mix_seed(kBatterySeed, static_cast<std::uint64_t>(i)), "battery#" + std::to_string(i));
}

double battery_alpha(int i) { return std::vector<double>{2.0, 2.5, 3.0}[i % 3]; }

std::string first_failures(const VerifyReport& rep, std::size_t limit = 3) {
  std::string out;
  std::size_t shown = 0;
  for (const auto& c : rep.checks()) {
    if (c.passed || shown == limit) continue;
    out += (shown++ ? "; " : "") + c.suite + ": " + c.name + (c.detail.empty() ? "" : " [" + c.detail + "]");
  }
  return out;
}

Outcome summarize(const VerifyReport& rep) {
  const std::size_t n = rep.checks().size(), bad = rep.failures();
  Outcome o;
  o.pass = bad == 0 && n > 0;
  o.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " checks";
  if (bad) o.detail += "; " + first_failures(rep);
  return o;
}

// Max of a per-slot quantity over policy runs on the battery, computed per
// index so the result is independent of thread scheduling.
struct SlotMax {
  double value = -std::numeric_limits<double>::infinity();
  std::string where;
};

SlotMax max_chosen_lcr(PolicyKind kind, const std::vector<double>& alphas) {
  std::vector<SlotMax> per(alphas.size() * kBatterySize);
  parallel_for(per.size(), [&](std::size_t idx) {
    const double a = alphas[idx / kBatterySize];
    const int i = static_cast<int>(idx % kBatterySize);
    const auto cost = CostModel::power_law(a);
    const auto tr = run_policy(battery_instance(i, cost), kind, cost);
    for (const auto& d : tr.decisions)
      if (d.chosen_lcr && *d.chosen_lcr > per[idx].value)
        per[idx] = {*d.chosen_lcr, "alpha=" + fmt(a) + " battery#" + std::to_string(i) + " slot " + std::to_string(d.slot)};
  });
  SlotMax best;
  for (const auto& p : per)
    if (p.value > best.value) best = p;
  return best;
}

Outcome game_alpha2() {
  const auto cost = CostModel::power_law(2.0);
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = run_adversarial_game(PolicyKind::kMinLcr, gen_alpha2_lb_instance(1000), cost);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double r = g.report.ratio;
  Outcome o;
  o.pass = std::abs(r - kPhi1) <= 0.01 * kPhi1 && secs < 10.0;
  o.detail = "ratio " + fmt(r) + ", k=" + std::to_string(g.chosen_count) + ", " + fmt_seconds(secs);
  return o;
}

Outcome game_sqrt2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string at;
  for (double a : {2.5, 3.0, 4.0}) {
    const auto cost = CostModel::power_law(a);
    const auto tmpl = gen_sqrt2_lb_instance(a);
    for (std::size_t k : {1u, 2u}) {
      const auto g = run_adversarial_game(fixed_count_policy(k), "take-" + std::to_string(k), tmpl, cost, false);
      const double gap = std::abs(g.report.ratio - kSqrt2Plus1);
      if (gap >= worst) {
        worst = gap;
        at = "alpha=" + fmt(a) + " k=" + std::to_string(k) + " ratio " + fmt(g.report.ratio);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  o.pass = worst <= 1e-6 && secs < 1.0;
  o.detail = "max |ratio - (sqrt2+1)| " + fmt(worst) + " at " + at + ", " + fmt_seconds(secs);
  return o;
}

Outcome lower_bound_curve(const std::string& csv_path) {
  LowerBoundOptions opt;
  opt.z_max = 10000;
  opt.keep_grid = false;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<LowerBoundResult> results;
  for (int i = 0; i <= 20; ++i) results.push_back(eval_general_lower_bound(2.0 + 0.1 * i, opt));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ofstream csv(csv_path);
  csv << lower_bound_csv_header() << '\n';
  for (const auto& r : results) csv << lower_bound_csv_row(r.best) << '\n';
  csv.close();

  const double at2 = results.front().best.value;
  double lowest = std::numeric_limits<double>::infinity();
  std::string lowest_at;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].best.value < lowest) {
      lowest = results[i].best.value;
      lowest_at = fmt(results[i].alpha);
    }
  Outcome o;
  o.pass = std::abs(at2 - kPhi1) <= 1e-2 && lowest >= kSqrt2Plus1 - 1e-6 && secs < 60.0 && csv.good();
  o.detail = "alpha=2 " + fmt(at2) + ", min over 2.1..4.0 " + fmt(lowest) + " at alpha=" + lowest_at + ", " +
             std::to_string(results.size()) + " rows -> " + csv_path + ", " + fmt_seconds(secs);
  if (!csv.good()) o.detail += " (write failed)";
  return o;
}

Outcome beta_roots() {
  const double b2 = beta_root(2.0);
  double worst = 0.0;
  for (int i = 0; i <= 16; ++i) {
    const double a = 2.0 + 0.25 * i, b = beta_root(a);
    worst = std::max(worst, std::abs(std::pow(b, a) + std::pow(b, a - 1.0) - 1.0));
  }
  Outcome o;
  o.pass = std::abs(b2 - golden_delta()) <= 1e-9 && worst < 1e-10;
  o.detail = "beta(2) " + fmt(b2) + ", max residual " + fmt(worst);
  return o;
}

Outcome ledger_soundness(double& greedy_max_ratio, std::string& greedy_at) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<char> sound(kBatterySize, 0);
  std::vector<double> ratio(kBatterySize, 0.0), greedy(kBatterySize, 0.0);
  parallel_for(kBatterySize, [&](std::size_t idx) {
    const int i = static_cast<int>(idx);
    const auto cost = CostModel::power_law(battery_alpha(i));
    const auto inst = battery_instance(i, cost);
    const auto r = competitive_report(inst, PolicyKind::kMinLcr, cost);
    sound[idx] = r.ledger_sound;
    ratio[idx] = r.ratio;
    greedy[idx] = competitive_report(inst, PolicyKind::kGreedy, cost).ratio;
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int bad = 0, first_bad = -1;
  double worst = 0.0;
  greedy_max_ratio = 0.0;
  for (int i = 0; i < kBatterySize; ++i) {
    if (!sound[i] && bad++ == 0) first_bad = i;
    worst = std::max(worst, ratio[i]);
    if (greedy[i] > greedy_max_ratio) {
      greedy_max_ratio = greedy[i];
      greedy_at = "battery#" + std::to_string(i);
    }
  }
  Outcome o;
  o.pass = bad == 0 && secs < 300.0;
  o.detail = std::to_string(kBatterySize - bad) + "/" + std::to_string(kBatterySize) + " sound, max ratio " + fmt(worst) +
             (first_bad >= 0 ? ", first unsound battery#" + std::to_string(first_bad) : "") + ", " + fmt_seconds(secs);
  return o;
}

Outcome sim_lcr_bound() {
  std::vector<double> alphas{2.0};
  for (int i = 0; i <= 15; ++i) alphas.push_back(2.5 + 0.1 * i);
  const auto m = max_chosen_lcr(PolicyKind::kSimLcr, alphas);
  Outcome o;
  o.pass = m.value <= kPhi1 + 1e-9;
  o.detail = "max per-slot LCR " + fmt(m.value) + " at " + m.where + " over " + std::to_string(alphas.size()) + " alphas";
  return o;
}

Outcome greedy_bound(double max_ratio, const std::string& ratio_at) {
  std::vector<double> alphas;
  for (int i = 0; i <= 20; ++i) alphas.push_back(2.0 + 0.1 * i);
  const auto m = max_chosen_lcr(PolicyKind::kGreedy, alphas);
  Outcome o;
  o.pass = m.value <= 3.0 + 1e-9 && max_ratio <= 3.0;
  o.detail = "max per-slot LCR_m " + fmt(m.value) + " at " + m.where + "; max OFF/Greedy " + fmt(max_ratio) + " at " +
             ratio_at;
  return o;
}

Outcome offline_oracles() {
  VerifyReport rep;
  verify_oracle_equivalence(rep, 1000, mix_seed(kBatterySeed, 8, 1));
  verify_subadditivity(rep, 1000, mix_seed(kBatterySeed, 8, 2));
  return summarize(rep);
}

Outcome analytic_verifiers() {
  VerifyReport rep;
  for (std::int64_t z : {10, 100, 10000}) verify_mincran(rep, z);
  rep.add("hbound", "theta(2, 3) = 1/2", std::abs(theta(2.0, 3) - 0.5) <= 1e-12);
  verify_theta_monotone(rep);
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(2.5 + 0.05 * i);
  verify_small_m_cases(rep, grid, 2000, mix_seed(kBatterySeed, 9, 1));
  std::vector<std::int64_t> ms;
  for (std::int64_t m = 1; m <= 200; ++m) ms.push_back(m);
  verify_alpha2_lcr_cases(rep, ms, 200, mix_seed(kBatterySeed, 9, 2));
  return summarize(rep);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string csv_path = argc > 1 ? argv[1] : "lower_bound_curve.csv";
  double greedy_ratio = 0.0;
  std::string greedy_at;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"alpha=2 adaptive game, z=1000, min-LCR within 1% of phi+1", game_alpha2},
      {"sqrt2+1 game for alpha in {2.5,3,4}, k in {1,2}", game_sqrt2},
      {"general lower-bound curve, z_max=10^4", [&] { return lower_bound_curve(csv_path); }},
      {"beta roots", beta_roots},
      {"min-LCR ledger soundness on 10^4 random instances", [&] { return ledger_soundness(greedy_ratio, greedy_at); }},
      {"sim-LCR per-slot LCR <= phi+1", sim_lcr_bound},
      {"Greedy per-slot LCR <= 3 and OFF/Greedy <= 3", [&] { return greedy_bound(greedy_ratio, greedy_at); }},
      {"offline flow = brute force; sub-additivity", offline_oracles},
      {"analytic verifiers", analytic_verifiers},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << i + 1 << "] " << criteria[i].first << "  (" << o.detail << ")"
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
