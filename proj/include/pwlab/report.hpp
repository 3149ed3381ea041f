// Check reports: human-readable text and canonical machine-readable JSON.
// The structured form is byte-stable across runs: entries are sorted by name,
// polynomials are serialized in the fixed monomial order, and timings are
// excluded from it.

#pragma once

#include <iomanip>

#include <json.hpp>

#include "pwlab/scalar.hpp"

namespace pwlab {

enum class CheckStatus { Pass, Fail, Broken };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Broken: return "error";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  std::string anchor;    // the identity the check decides
  CheckStatus status = CheckStatus::Broken;
  std::string residual;  // empty when the identity holds exactly
  double wall_ms = 0.0;
};

struct CheckReport {
  std::string scenario;
  std::vector<CheckResult> entries;

  bool all_passed() const {
    for (const auto& e : entries)
      if (e.status != CheckStatus::Pass) return false;
    return true;
  }
  void normalize() {
    std::sort(entries.begin(), entries.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  }
};

inline std::string report_text(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "pwlab check report\n";
  os << "spinor realization: exterior algebra; horizontal gammas raise degree, plus\n"
     << "chirality = even degree for spinors and degree = n mod 2 for dual spinors\n\n";
  int pass = 0, total = 0;
  for (const auto& rep : reports) {
    os << "scenario " << rep.scenario << "\n";
    for (const auto& e : rep.entries) {
      os << "  [" << std::setw(5) << status_name(e.status) << "] " << e.name;
      os << "  (" << e.anchor << ")";
      os << "  " << std::fixed << std::setprecision(1) << e.wall_ms << " ms\n";
      if (!e.residual.empty()) os << "          " << e.residual << "\n";
      ++total;
      if (e.status == CheckStatus::Pass) ++pass;
    }
  }
  os << "\n" << pass << "/" << total << " checks passed\n";
  return os.str();
}

inline std::string report_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json jr;
    jr["scenario"] = rep.scenario;
    jr["checks"] = nlohmann::ordered_json::array();
    for (const auto& e : rep.entries) {
      nlohmann::ordered_json je;
      je["name"] = e.name;
      je["anchor"] = e.anchor;
      je["status"] = status_name(e.status);
      je["residual"] = e.residual;
      jr["checks"].push_back(std::move(je));
    }
    out.push_back(std::move(jr));
  }
  return out.dump(2) + "\n";
}

}  // namespace pwlab
