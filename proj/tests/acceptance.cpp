// Runs the acceptance suite with seed 0 and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include "samelson/verify.hpp"

#include <iostream>

int main() {
  using namespace samelson;
  VerificationReport r = run_verify_suite(0);
  for (int k = 1; k <= 12; ++k) {
    std::cout << "criterion " << k << ": " << (r.criterion_pass(k) ? "PASS" : "FAIL");
    for (const Check& c : r.checks)
      if (c.criterion == k && !c.pass)
        std::cout << " | " << c.name << " expected " << c.expected << ", computed " << c.computed
                  << (c.error.empty() ? "" : " (" + c.error + ")");
    std::cout << "\n";
  }
  return r.all_pass() ? 0 : 1;
}
