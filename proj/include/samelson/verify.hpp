#pragma once

// Acceptance suite: twelve numbered criteria, each made of one or more named checks.

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace samelson {

struct Check {
  int criterion = 0;
  std::string name;       // e.g. "aeppli_h11.su3.model"
  std::string operation;  // module-level operation exercised
  std::string claim;      // the statement being checked, in words
  std::string expected;
  std::string computed;
  std::string tolerance;  // "exact" or a bound
  bool pass = false;
  std::string error;      // exception text when the check could not run
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<Check> checks;  // sorted by (criterion, name)

  bool all_pass() const;
  bool criterion_pass(int k) const;
  std::vector<int> criteria() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  bool quick = false;      // fewer random samples (tests only)
  double budget_scale = 1; // multiplies runtime budgets
};

VerificationReport run_verify_suite(const VerifyOptions& opt);
inline VerificationReport run_verify_suite(std::uint64_t seed) { return run_verify_suite(VerifyOptions{seed}); }

nlohmann::json to_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);

}  // namespace samelson
