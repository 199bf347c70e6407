#pragma once

#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace gc3 {

enum class CheckStatus { pass, fail, skipped };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct Check {
  std::string id;
  CheckStatus status = CheckStatus::skipped;
  std::string expected, observed, tolerance;
  double seconds = 0;
};

inline Check make_check(std::string id, bool ok, std::string expected, std::string observed,
                        std::string tolerance = "exact") {
  return {std::move(id), ok ? CheckStatus::pass : CheckStatus::fail, std::move(expected), std::move(observed),
          std::move(tolerance)};
}

/// Runs f() -> Check, timing it; exceptions become failed checks.
template <class F>
Check timed_check(const std::string& id, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    c = f();
  } catch (const std::exception& e) {
    c = {id, CheckStatus::fail, "", std::string("error: ") + e.what(), ""};
  }
  if (c.id.empty()) c.id = id;
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"suite", suite}, {"seconds", seconds}, {"passed", passed()}};
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"id", c.id},
                             {"status", status_name(c.status)},
                             {"expected", c.expected},
                             {"observed", c.observed},
                             {"tolerance", c.tolerance},
                             {"seconds", c.seconds}});
    return j;
  }
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void print_report(std::ostream& os, const VerificationReport& r, const std::string& format) {
  if (format == "json") {
    os << r.to_json().dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    os << "suite,id,status,expected,observed,tolerance,seconds\n";
    for (const auto& c : r.checks)
      os << csv_field(r.suite) << ',' << csv_field(c.id) << ',' << status_name(c.status) << ','
         << csv_field(c.expected) << ',' << csv_field(c.observed) << ',' << csv_field(c.tolerance) << ','
         << c.seconds << '\n';
    return;
  }
  for (const auto& c : r.checks) {
    os << std::left << std::setw(8) << status_name(c.status) << std::setw(34) << c.id << " expected " << c.expected
       << ", observed " << c.observed;
    if (!c.tolerance.empty()) os << " (" << c.tolerance << ")";
    os << " [" << std::fixed << std::setprecision(1) << c.seconds << "s]\n";
    os.unsetf(std::ios::fixed);
    os << std::setprecision(6);
  }
  os << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " in " << std::fixed << std::setprecision(1)
     << r.seconds << "s\n";
  os.unsetf(std::ios::fixed);
  os << std::setprecision(6);
}

}  // namespace gc3
