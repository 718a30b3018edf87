#pragma once

// Machine-checkable verification reports: each claim carries a pass/fail
// verdict together with a witness object or a counterexample locator, never
// a bare boolean.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fusionforge/json_io.hpp"

namespace fusionforge {

struct Claim {
  std::string id;
  std::string ref;  // reference for the mathematical fact being checked
  bool pass = false;
  Json witness;     // witness object or counterexample locator

  Json to_json() const {
    return Json{{"id", id},
                {"paper_ref", ref},
                {"verdict", pass ? "pass" : "fail"},
                {"witness", witness.is_null() ? Json(nullptr) : witness}};
  }
};

struct VerificationReport {
  std::string scenario;
  Json inputs = Json::object();
  std::vector<Claim> claims;
  double elapsed_ms = 0.0;

  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }

  /// Timing is opt-in so that default JSON output is byte-identical across
  /// runs.
  Json to_json(bool with_timing = false) const {
    Json j;
    j["scenario"] = scenario;
    j["inputs"] = inputs;
    Json cl = Json::array();
    for (const auto& c : claims) cl.push_back(c.to_json());
    j["claims"] = cl;
    if (with_timing) j["elapsed_ms"] = elapsed_ms;
    return j;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "scenario: " << scenario << "\n";
    out << "inputs: " << inputs.dump() << "\n";
    for (const auto& c : claims)
      out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.id << " (" << c.ref
          << ")\n";
    out << (all_pass() ? "all claims pass" : "SOME CLAIMS FAILED") << "\n";
    return out.str();
  }
};

} // namespace fusionforge
