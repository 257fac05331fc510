#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerosum/enumeration.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

inline constexpr int kReportVersion = 1;

struct Counterexample {
  Sequence sequence;
  std::string clause;
};

/// Outcome of a sweep or a single verification. `verified` only when the
/// whole declared grid was exhausted without a failure; a sweep that runs
/// out of budget throws instead of returning a partial report.
struct VerificationReport {
  std::string statement;
  std::string kind;  // theorem | conjecture
  FiniteAbelianGroup group;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Counterexample> counterexamples;  // first few, in canonical order
  std::uint64_t counterexamples_total = 0;
  std::uint64_t instances_checked = 0;
  std::uint64_t nodes = 0;
  std::uint64_t millis = 0;
  nlohmann::json stats = nlohmann::json::object();

  bool verified() const { return counterexamples_total == 0; }
  std::string outcome() const { return verified() ? "verified" : "counterexample"; }
  bool is_theorem() const { return kind == "theorem"; }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json cx = nlohmann::json::array();
  for (const auto& c : r.counterexamples) cx.push_back({{"sequence", c.sequence.to_string()}, {"clause", c.clause}});
  return {{"statement", r.statement},
          {"kind", r.kind},
          {"group", r.group.to_string()},
          {"params", r.params},
          {"outcome", r.outcome()},
          {"counterexamples", cx},
          {"counterexamples_total", r.counterexamples_total},
          {"instances_checked", r.instances_checked},
          {"nodes", r.nodes},
          {"millis", r.millis},
          {"stats", r.stats},
          {"version", kReportVersion}};
}

inline nlohmann::json to_json(const InvariantResult& r) {
  nlohmann::json j{{"invariant", r.name},
                   {"group", r.group.to_string()},
                   {"value", r.value},
                   {"witness", r.witness.to_string()},
                   {"nodes", r.nodes},
                   {"millis", r.millis},
                   {"version", kReportVersion}};
  if (r.ell) j["ell"] = *r.ell;
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
  return out + "\n";
}

}  // namespace detail

/// One row per counterexample; a verified report yields a single row with
/// empty sequence and clause columns.
inline std::string to_csv(const VerificationReport& r) {
  std::string out =
      detail::csv_row({"statement", "group", "outcome", "instances_checked", "sequence", "clause"});
  const auto head = std::vector<std::string>{r.statement, r.group.to_string(), r.outcome(),
                                             std::to_string(r.instances_checked)};
  if (r.counterexamples.empty()) {
    auto row = head;
    row.insert(row.end(), {"", ""});
    out += detail::csv_row(row);
  }
  for (const auto& c : r.counterexamples) {
    auto row = head;
    row.insert(row.end(), {c.sequence.to_string(), c.clause});
    out += detail::csv_row(row);
  }
  return out;
}

inline std::string to_csv(const InvariantResult& r) {
  return detail::csv_row({"invariant", "group", "ell", "value", "witness", "nodes"}) +
         detail::csv_row({r.name, r.group.to_string(), r.ell ? std::to_string(*r.ell) : "", std::to_string(r.value),
                          r.witness.to_string(), std::to_string(r.nodes)});
}

inline std::string to_text(const VerificationReport& r) {
  std::ostringstream out;
  out << r.statement << " on " << r.group.to_string() << ": " << r.outcome() << "\n";
  out << "  params: " << r.params.dump() << "\n";
  out << "  instances checked: " << r.instances_checked << "\n";
  out << "  search nodes: " << r.nodes << "\n";
  if (!r.stats.empty()) out << "  stats: " << r.stats.dump() << "\n";
  if (!r.verified()) {
    out << "  " << (r.is_theorem() ? "THEOREM CHECK FAILED" : "COUNTEREXAMPLE FOUND") << ": "
        << r.counterexamples_total << " instance(s)\n";
    for (const auto& c : r.counterexamples) out << "    " << c.sequence.to_string() << "  " << c.clause << "\n";
  }
  return out.str();
}

inline std::string to_text(const InvariantResult& r) {
  std::ostringstream out;
  out << r.name << "(" << r.group.to_string();
  if (r.ell) out << ", ell=" << *r.ell;
  out << ") = " << r.value << "\n";
  out << "  extremal witness: " << r.witness.to_string() << "\n";
  out << "  search nodes: " << r.nodes << "\n";
  return out.str();
}

enum class Format { json, csv, text };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw ParseError("unknown format '" + s + "', expected json, csv or text");
}

template <class Result>
std::string render(const Result& r, Format format) {
  switch (format) {
    case Format::json: return to_json(r).dump(2) + "\n";
    case Format::csv: return to_csv(r);
    case Format::text: return to_text(r);
  }
  return {};
}

}  // namespace zerosum
