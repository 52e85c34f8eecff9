#pragma once

// Command-line front end. run_cli is the whole program minus main(), so
// tests can drive it with captured streams.
//
//   simulate   --alpha A --policy P (--instance FILE | --gen SPEC)
//   lowerbound --alpha A [--alpha B ...] --z-max N --x-grid G
//   verify     [mincran|hbound|smallm|alpha2lcr|subadd|oracle|all]
//   game       --alpha A (--z N | --sqrt2) --policy P
//   sweep      --alpha A ... --family F --policy P ... --samples N
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speedscale/speedscale.hpp"

namespace speedscale::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "name:key=value,key=value"; the part after ':' is optional.
struct GeneratorSpec {
  std::string kind;
  std::map<std::string, std::string> params;

  double number(const std::string& key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw UsageError("generator parameter '" + key + "' is not a number: " + it->second);
    }
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

inline GeneratorSpec parse_generator_spec(const std::string& spec) {
  GeneratorSpec g;
  const auto colon = spec.find(':');
  g.kind = spec.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("malformed generator parameter '" + item + "'");
      g.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  static const std::vector<std::string> known{"alpha2-lb", "sqrt2-lb", "random", "heavy-tail"};
  if (std::find(known.begin(), known.end(), g.kind) == known.end())
    throw UsageError("unknown generator '" + g.kind + "' (known: alpha2-lb, sqrt2-lb, random, heavy-tail)");
  return g;
}

/// Either a finished instance or a deadline-free template for the game.
struct InputSource {
  std::optional<Instance> instance;
  std::optional<InstanceTemplate> game_template;
};

inline InputSource make_input(const GeneratorSpec& g, const CostModel& cost, std::uint64_t seed) {
  InputSource src;
  if (g.kind == "alpha2-lb") {
    const double z = g.number("z", 10);
    if (z < 1 || z != std::floor(z)) throw UsageError("alpha2-lb needs an integer z >= 1");
    src.game_template = gen_alpha2_lb_instance(static_cast<std::int64_t>(z));
  } else if (g.kind == "sqrt2-lb") {
    if (!cost.alpha() || !(*cost.alpha() > 2.0)) throw UsageError("sqrt2-lb needs alpha > 2");
    src.game_template = gen_sqrt2_lb_instance(*cost.alpha());
  } else {
    RandomInstanceConfig rc;
    const double n = g.number("n", 20);
    rc.n_min = rc.n_max = static_cast<int>(n);
    rc.arrival_rate = g.number("rate", rc.arrival_rate);
    rc.infinite_prob = g.number("inf", rc.infinite_prob);
    rc.max_deadline = static_cast<int>(g.number("dmax", rc.max_deadline));
    rc.value_scale = g.number("scale", 0.0);
    rc.values = g.kind == "heavy-tail" ? ValueDistribution::kHeavyTail : ValueDistribution::kUniform;
    if (n < 0 || rc.arrival_rate <= 0 || rc.infinite_prob < 0 || rc.infinite_prob > 1 || rc.max_deadline < 1)
      throw UsageError("random generator parameters out of range");
    const auto s = static_cast<std::uint64_t>(g.number("seed", static_cast<double>(seed)));
    src.instance = random_instance(rc, cost, s, g.kind + ":seed=" + std::to_string(s));
  }
  return src;
}

inline std::string timestamp_line() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << "# generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Writes to --out when given, otherwise to the default stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline PolicyKind policy_or_throw(const std::string& name) {
  if (auto k = parse_policy(name)) return *k;
  std::string names;
  for (const auto& n : policy_names()) names += (names.empty() ? "" : ", ") + n;
  throw UsageError("unknown policy '" + name + "' (valid: " + names + ")");
}

struct Options {
  double alpha = 2.0;
  std::vector<double> alphas;
  std::string policy = "min-lcr";
  std::vector<std::string> policies;
  std::string instance;
  std::string gen;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::int64_t z_max = 200;
  std::int64_t x_grid = 64;
  bool no_header = false;
  bool summary_only = false;
  std::string suite = "all";
  double mincran_delta = golden_delta();
  std::int64_t z = 0;
  bool sqrt2 = false;
  std::string family = "random";
  int samples = 100;
  std::vector<std::int64_t> z_list{10, 100};
};

inline void write_reports(std::ostream& os, const std::vector<RatioReport>& reports, const Options& o) {
  if (o.format == "csv") {
    if (!o.no_header) os << timestamp_line() << '\n';
    os << report_csv_header() << '\n';
    for (const auto& r : reports) os << report_csv_row(r) << '\n';
  } else if (reports.size() == 1) {
    os << to_json(reports.front()).dump(2) << '\n';
  } else {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, false));
    os << arr.dump(2) << '\n';
  }
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.instance.empty() == o.gen.empty()) throw UsageError("simulate needs exactly one of --instance or --gen");
  const auto kind = policy_or_throw(o.policy);
  const auto cost = CostModel::power_law(o.alpha);
  RatioReport report;
  if (!o.instance.empty()) {
    std::ifstream in(o.instance);
    if (!in) throw UsageError("cannot read instance file '" + o.instance + "'");
    const auto inst = read_instance_jsonl(in, o.instance);
    report = competitive_report(inst, kind, cost);
  } else {
    const auto src = make_input(parse_generator_spec(o.gen), cost, o.seed);
    report = src.instance ? competitive_report(*src.instance, kind, cost)
                          : run_adversarial_game(kind, *src.game_template, cost).report;
  }
  Output sink(o.out, out);
  write_reports(sink.get(), {report}, o);
  return kExitOk;
}

inline int cmd_lowerbound(const Options& o, std::ostream& out) {
  if (o.alphas.empty()) throw UsageError("lowerbound needs at least one --alpha");
  for (double a : o.alphas)
    if (!(a >= 2.0)) throw UsageError("lowerbound needs alpha >= 2, got " + format_number(a));
  if (o.z_max < 1 || o.x_grid < 2) throw UsageError("lowerbound needs --z-max >= 1 and --x-grid >= 2");
  std::vector<LowerBoundResult> results;
  LowerBoundOptions lo;
  lo.z_max = o.z_max;
  lo.x_grid = o.x_grid;
  lo.keep_grid = !o.summary_only;
  for (double a : o.alphas) results.push_back(eval_general_lower_bound(a, lo));
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.alpha < b.alpha; });

  Output sink(o.out, out);
  auto& os = sink.get();
  if (!o.no_header) os << timestamp_line() << '\n';
  os << lower_bound_csv_header() << '\n';
  for (const auto& r : results)
    for (const auto& p : r.grid) os << lower_bound_csv_row(p) << '\n';
  os << "# summary\n";
  for (const auto& r : results) os << lower_bound_csv_row(r.best) << '\n';
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  vo.mincran_delta = o.mincran_delta;
  vo.seed = o.seed;
  VerifyReport rep;
  try {
    rep = run_verify_suite(o.suite, vo);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  for (const auto& c : rep.checks())
    out << (c.passed ? "PASS  " : "FAIL  ") << c.suite << "  " << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
        << '\n';
  out << rep.checks().size() - rep.failures() << "/" << rep.checks().size() << " checks passed\n";
  return rep.passed() ? kExitOk : kExitVerifyFailed;
}

inline int cmd_game(const Options& o, std::ostream& out) {
  const auto kind = policy_or_throw(o.policy);
  if (!(o.alpha >= 2.0)) throw UsageError("game needs alpha >= 2");
  if (o.sqrt2 == (o.z > 0)) throw UsageError("game needs exactly one of --z N or --sqrt2");
  if (o.sqrt2 && !(o.alpha > 2.0)) throw UsageError("the sqrt2 construction needs alpha > 2");
  const auto cost = CostModel::power_law(o.alpha);
  const auto tmpl = o.sqrt2 ? gen_sqrt2_lb_instance(o.alpha) : gen_alpha2_lb_instance(o.z);
  const auto game = run_adversarial_game(kind, tmpl, cost);
  const double k = static_cast<double>(game.chosen_count);
  std::optional<double> predicted;
  if (o.sqrt2 && (game.chosen_count == 1 || game.chosen_count == 2))
    predicted = std::numbers::sqrt2 + 1;
  else if (!o.sqrt2 && o.alpha == 2.0 && game.chosen_count >= 1)
    predicted = alpha2_game_ratio(static_cast<double>(o.z), k);

  Output sink(o.out, out);
  auto& os = sink.get();
  if (o.format == "json") {
    auto j = to_json(game.report, false);
    j["chosen"] = game.chosen_count;
    j["predicted"] = predicted ? json_number(*predicted) : nullptr;
    os << j.dump(2) << '\n';
  } else {
    os << "template   " << tmpl.label << '\n'
       << "policy     " << game.report.policy << '\n'
       << "chosen     " << game.chosen_count << '\n'
       << "C_OFF      " << format_number(game.report.off_profit) << '\n'
       << "C_ALG      " << format_number(game.report.alg_profit) << '\n'
       << "ratio      " << format_number(game.report.ratio) << '\n'
       << "predicted  " << (predicted ? format_number(*predicted) : "n/a") << '\n';
  }
  return kExitOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig cfg;
  cfg.alphas = o.alphas.empty() ? std::vector<double>{o.alpha} : o.alphas;
  for (double a : cfg.alphas)
    if (!(a > 1.0)) throw UsageError("sweep needs alpha > 1");
  const auto fam = parse_family(o.family);
  if (!fam) throw UsageError("unknown family '" + o.family + "' (adversarial, random, heavy-tail)");
  cfg.family = *fam;
  cfg.policies.clear();
  for (const auto& p : o.policies.empty() ? std::vector<std::string>{o.policy} : o.policies)
    cfg.policies.push_back(policy_or_throw(p));
  if (o.samples < 0) throw UsageError("--samples must be >= 0");
  cfg.samples = o.samples;
  cfg.z_list = o.z_list;
  for (auto z : cfg.z_list)
    if (z < 1) throw UsageError("--z-list entries must be >= 1");
  if (cfg.family == InstanceFamily::kAdversarial)
    for (double a : cfg.alphas)
      if (a < 2.0) throw UsageError("the adversarial family needs alpha >= 2");
  cfg.seed = o.seed;
  const auto res = sweep_experiment(cfg);

  Output sink(o.out, out);
  auto& os = sink.get();
  if (o.format == "json") {
    nlohmann::ordered_json j;
    auto agg = nlohmann::ordered_json::array();
    for (const auto& a : res.aggregates)
      agg.push_back({{"alpha", a.alpha}, {"policy", a.policy}, {"runs", a.runs}, {"max_ratio", json_number(a.max_ratio)},
                     {"argmax", a.argmax_label}, {"ledgers_sound", a.all_ledgers_sound}});
    j["aggregates"] = std::move(agg);
    auto reps = nlohmann::ordered_json::array();
    for (const auto& r : res.reports) reps.push_back(to_json(r, false));
    j["reports"] = std::move(reps);
    os << j.dump(2) << '\n';
  } else {
    write_reports(os, res.reports, o);
    os << "# max ratio per (alpha, policy)\n";
    for (const auto& a : res.aggregates)
      os << "# " << format_number(a.alpha) << "," << a.policy << "," << format_number(a.max_ratio) << '\n';
  }
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Online profit maximization under speed scaling: simulation, games, lower bounds, verification",
               "speedscale"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run a policy on an instance and report C_OFF / C_ALG");
  sim->add_option("--alpha", o.alpha, "cost exponent, g(k) = k^alpha")->check(CLI::Range(1.0, 1e6));
  sim->add_option("--policy", o.policy, "min-lcr | sim-lcr | greedy");
  sim->add_option("--instance", o.instance, "JSONL instance file");
  sim->add_option("--gen", o.gen, "generator, e.g. alpha2-lb:z=100, sqrt2-lb, random:n=20,rate=3");
  sim->add_option("--seed", o.seed, "seed for random generators");
  sim->add_option("--out", o.out, "output file (default stdout)");
  sim->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sim->add_flag("--no-header", o.no_header, "omit the timestamp line from CSV");

  auto* lb = app.add_subcommand("lowerbound", "evaluate the general lower bound over z and x");
  lb->add_option("--alpha", o.alphas, "exponent(s), repeatable, each >= 2");
  lb->add_option("--z-max", o.z_max, "largest z");
  lb->add_option("--x-grid", o.x_grid, "grid points for x");
  lb->add_option("--out", o.out, "output file (default stdout)");
  lb->add_flag("--no-header", o.no_header, "omit the timestamp line");
  lb->add_flag("--summary-only", o.summary_only, "emit only the per-alpha summary rows");

  auto* ver = app.add_subcommand("verify", "run numeric verifier suites");
  ver->add_option("suite", o.suite, "mincran | hbound | smallm | alpha2lcr | subadd | oracle | all");
  ver->add_option("--seed", o.seed, "seed for randomized checks");
  ver->add_option("--mincran-delta", o.mincran_delta, "expected argmin fraction (for negative tests)");

  auto* game = app.add_subcommand("game", "play a policy against the adaptive deadline adversary");
  game->add_option("--alpha", o.alpha, "cost exponent");
  game->add_option("--z", o.z, "2z jobs of value 2z");
  game->add_flag("--sqrt2", o.sqrt2, "four-job construction (alpha > 2)");
  game->add_option("--policy", o.policy, "min-lcr | sim-lcr | greedy");
  game->add_option("--out", o.out, "output file (default stdout)");
  game->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* sw = app.add_subcommand("sweep", "seeded batch over an instance family");
  sw->add_option("--alpha", o.alphas, "exponent(s), repeatable");
  sw->add_option("--family", o.family, "adversarial | random | heavy-tail");
  sw->add_option("--policy", o.policies, "policy name(s), repeatable");
  sw->add_option("--samples", o.samples, "instances per (alpha, policy) for random families");
  sw->add_option("--z-list", o.z_list, "z values for the adversarial family");
  sw->add_option("--seed", o.seed, "seed");
  sw->add_option("--out", o.out, "output file (default stdout)");
  sw->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"json", "csv"}));
  sw->add_flag("--no-header", o.no_header, "omit the timestamp line from CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      if (o.format.empty()) o.format = "json";
      return cmd_simulate(o, out);
    }
    if (lb->parsed()) return cmd_lowerbound(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (game->parsed()) return cmd_game(o, out);
    if (sw->parsed()) {
      if (o.format.empty()) o.format = "csv";
      return cmd_sweep(o, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace speedscale::cli
