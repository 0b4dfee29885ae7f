#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trigconv/classifiers.hpp"
#include "trigconv/harness.hpp"
#include "trigconv/sequence.hpp"
#include "trigconv/series.hpp"

namespace trigconv {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

namespace detail {

// JSON has no inf/nan; they become null.
inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

inline std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline json to_json(const ConditionReport& r) {
  json trend = json::array();
  for (const auto& [n, v] : r.trend) trend.push_back(json::array({n, detail::number(v)}));
  return json{{"condition", r.condition},
              {"verdict", to_string(r.verdict)},
              {"constant", detail::number(r.constant)},
              {"witness", r.witness},
              {"range", json::array({r.range.first, r.range.last})},
              {"stabilization", detail::number(r.stabilization)},
              {"horizon", r.horizon},
              {"trend", std::move(trend)},
              {"note", r.note}};
}

inline json to_json(const Classification& c) {
  json reports = json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  return json{{"subject", c.subject}, {"horizon", c.horizon}, {"reports", std::move(reports)}};
}

// ---------------------------------------------------------------- curves

inline std::string curve_csv(const TailNormCurve& curve) {
  std::string out = "n,sup_estimate,truncation_slack,max_k_ck\n";
  for (const auto& e : curve.entries) {
    out += std::to_string(e.n);
    out += ',';
    out += detail::csv_number(e.sup_estimate);
    out += ',';
    if (e.truncation_slack) out += detail::csv_number(*e.truncation_slack);
    out += ',';
    out += detail::csv_number(e.max_k_ck);
    out += '\n';
  }
  return out;
}

inline json to_json(const TailNormCurve& curve) {
  json entries = json::array();
  for (const auto& e : curve.entries) {
    entries.push_back(json{{"n", e.n},
                           {"sup_estimate", detail::number(e.sup_estimate)},
                           {"truncation_slack", detail::number(e.truncation_slack)},
                           {"max_k_ck", detail::number(e.max_k_ck)}});
  }
  return json{{"subject", curve.subject}, {"grid", curve.grid}, {"entries", std::move(entries)}};
}

// ---------------------------------------------------------------- outcomes

inline json to_json(const InstanceRecord& r) {
  json q = json::object();
  for (const auto& [k, v] : r.quantities) q[k] = detail::number(v);
  json trend = json::array();
  for (const auto& [n, v] : r.trend) trend.push_back(json::array({n, detail::number(v)}));
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        json{{"inequality", v.name}, {"index", v.index}, {"lhs", detail::number(v.lhs)}, {"rhs", detail::number(v.rhs)}});
  }
  return json{{"member", r.member},
              {"premises_met", r.premises_met},
              {"passed", r.passed()},
              {"checks", r.checks},
              {"violation_count", r.violation_count},
              {"worst_slack", detail::number(r.worst_slack)},
              {"quantities", std::move(q)},
              {"trend", std::move(trend)},
              {"violations", std::move(violations)},
              {"note", r.note}};
}

inline json to_json(const VerificationOutcome& o) {
  const OutcomeSummary s = o.summary();
  json records = json::array();
  for (const auto& r : o.records) records.push_back(to_json(r));
  return json{{"theorem", to_string(o.theorem)},
              {"summary",
               {{"members", s.members},
                {"passed", s.passed},
                {"violated", s.violated},
                {"premises_not_met", s.premises_not_met},
                {"worst_slack", detail::number(s.worst_slack)}}},
              {"any_violation", o.any_violation()},
              {"records", std::move(records)}};
}

inline std::string outcome_table(const VerificationOutcome& o) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-60s %-8s %8s %10s %12s\n", "member", "result", "checks", "violations",
                "worst_slack");
  os << to_string(o.theorem) << '\n' << line;
  for (const auto& r : o.records) {
    const char* result = !r.premises_met ? "PREMISE" : (r.violated() ? "VIOLATED" : "ok");
    std::string member = r.member.size() > 60 ? r.member.substr(0, 57) + "..." : r.member;
    std::snprintf(line, sizeof line, "%-60s %-8s %8lld %10lld %12.4g\n", member.c_str(), result,
                  static_cast<long long>(r.checks), static_cast<long long>(r.violation_count), r.worst_slack);
    os << line;
    for (const auto& v : r.violations) {
      std::snprintf(line, sizeof line, "    %s at %lld: %.17g > %.17g\n", v.name.c_str(), static_cast<long long>(v.index),
                    v.lhs, v.rhs);
      os << line;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- manifests

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

struct RunManifest {
  std::vector<std::string> command_line;
  json defaults = json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> input_digests;  // name -> fnv1a64 hex
  std::string output_digest;
};

inline json to_json(const RunManifest& m) {
  json digests = json::object();
  for (const auto& [k, v] : m.input_digests) digests[k] = v;
  return json{{"tool", "trigconv"},
              {"version", kVersion},
              {"command_line", m.command_line},
              {"resolved", m.defaults},
              {"seed", m.seed ? json(*m.seed) : json(nullptr)},
              {"input_digests", std::move(digests)},
              {"output_digest", m.output_digest}};
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path);
}

}  // namespace trigconv
