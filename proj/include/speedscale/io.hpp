#pragma once

// Instance JSONL, trace/report JSON and report CSV.

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "speedscale/core.hpp"
#include "speedscale/format.hpp"
#include "speedscale/lower_bound.hpp"
#include "speedscale/report.hpp"

namespace speedscale {

class InstanceParseError : public std::runtime_error {
 public:
  InstanceParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::int64_t json_int(const nlohmann::json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key)) throw InstanceParseError(line, std::string("missing field '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw InstanceParseError(line, std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace detail

/// One job object per line; blank lines and lines starting with '#' are
/// skipped.
inline Instance read_instance_jsonl(std::istream& in, std::string label = {}) {
  std::vector<Job> jobs;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InstanceParseError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw InstanceParseError(line, "expected a JSON object");
    Job j;
    j.id = detail::json_int(obj, "id", line);
    j.arrival = detail::json_int(obj, "arrival", line);
    if (!obj.contains("value") || !obj["value"].is_number()) throw InstanceParseError(line, "field 'value' must be a number");
    j.value = obj["value"].get<double>();
    if (!obj.contains("deadline")) throw InstanceParseError(line, "missing field 'deadline'");
    const auto& d = obj["deadline"];
    try {
      if (d.is_string() && d.get<std::string>() == "inf")
        j.deadline = Deadline::infinite();
      else if (d.is_number_integer())
        j.deadline = Deadline::slots(d.get<std::int64_t>());
      else
        throw InstanceParseError(line, "field 'deadline' must be an integer or \"inf\"");
      validate_job(j);
    } catch (const DomainError& e) {
      throw InstanceParseError(line, e.what());
    }
    jobs.push_back(j);
  }
  try {
    return Instance(std::move(jobs), std::move(label));
  } catch (const DomainError& e) {
    throw InstanceParseError(line, e.what());
  }
}

inline void write_instance_jsonl(std::ostream& out, const Instance& instance) {
  for (const auto& j : instance.jobs()) {
    nlohmann::ordered_json o;
    o["id"] = j.id;
    o["arrival"] = j.arrival;
    o["value"] = j.value;
    if (j.deadline.is_infinite())
      o["deadline"] = "inf";
    else
      o["deadline"] = j.deadline.count();
    out << o.dump() << '\n';
  }
}

/// Non-finite numbers become null.
inline nlohmann::ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline nlohmann::ordered_json to_json(const LcrBreakdown& b) {
  return {{"i", b.i}, {"M", json_number(b.M)}, {"P", json_number(b.P)}, {"c_greedy", json_number(b.c_greedy)},
          {"lcr", json_number(b.lcr)}};
}

inline nlohmann::ordered_json to_json(const Trace& trace) {
  auto decisions = nlohmann::ordered_json::array();
  for (const auto& d : trace.decisions) {
    nlohmann::ordered_json o;
    o["slot"] = d.slot;
    o["processed"] = d.processed;
    o["payoff"] = json_number(d.payoff_sum);
    o["energy"] = json_number(d.energy);
    o["profit"] = json_number(d.profit);
    if (!d.ledger.empty() || d.chosen_lcr) {
      o["m"] = d.m;
      o["chosen_lcr"] = d.chosen_lcr ? json_number(*d.chosen_lcr) : nullptr;
      auto rows = nlohmann::ordered_json::array();
      for (const auto& b : d.ledger) rows.push_back(to_json(b));
      o["ledger"] = std::move(rows);
    }
    decisions.push_back(std::move(o));
  }
  return {{"total_profit", json_number(trace.total_profit)}, {"decisions", std::move(decisions)}};
}

inline nlohmann::ordered_json to_json(const RatioReport& r, bool with_traces = true) {
  nlohmann::ordered_json o;
  o["label"] = r.label;
  o["policy"] = r.policy;
  o["alpha"] = r.alpha ? json_number(*r.alpha) : nullptr;
  o["off"] = json_number(r.off_profit);
  o["alg"] = json_number(r.alg_profit);
  o["ratio"] = json_number(r.ratio);
  o["ratio_infinite"] = r.ratio_infinite;
  o["max_lcr"] = json_number(r.max_lcr);
  o["ledger_checked"] = r.ledger_checked;
  o["ledger_sound"] = r.ledger_sound;
  auto per_slot = nlohmann::ordered_json::array();
  for (const auto& s : r.per_slot_lcr) per_slot.push_back({{"slot", s.slot}, {"i", s.chosen}, {"lcr", json_number(s.lcr)}});
  o["per_slot_lcr"] = std::move(per_slot);
  if (with_traces) {
    o["trace"] = to_json(r.trace);
    o["offline_witness"] = to_json(r.offline_witness);
  }
  return o;
}

inline const char* report_csv_header() { return "label,alpha,policy,off,alg,ratio,max_lcr"; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string report_csv_row(const RatioReport& r) {
  return csv_field(r.label) + "," + (r.alpha ? format_number(*r.alpha) : "") + "," + csv_field(r.policy) + "," +
         format_number(r.off_profit) + "," + format_number(r.alg_profit) + "," + format_number(r.ratio) + "," +
         format_number(r.max_lcr);
}

inline const char* lower_bound_csv_header() { return "alpha,z,x,k_star,value"; }

inline std::string lower_bound_csv_row(const LowerBoundCurvePoint& p) {
  return format_number(p.alpha) + "," + std::to_string(p.z) + "," + format_number(p.x) + "," +
         std::to_string(p.k_star) + "," + format_number(p.value);
}

}  // namespace speedscale
