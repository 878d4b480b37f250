#include "doctest.h"
#include "samelson/verify.hpp"

using namespace samelson;

TEST_CASE("verify suite is deterministic and seed-robust") {
  VerifyOptions o;
  o.quick = true;
  o.budget_scale = 10;
  VerificationReport a = run_verify_suite(o), b = run_verify_suite(o);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.criteria().size() == 12);
  o.seed = 1;
  VerificationReport c = run_verify_suite(o);
  for (int k = 1; k <= 12; ++k) {
    CAPTURE(k);
    CHECK(a.criterion_pass(k) == c.criterion_pass(k));
  }
  for (const Check& x : a.checks) {
    CHECK_FALSE(x.name.empty());
    CHECK_FALSE(x.operation.empty());
    CHECK_FALSE(x.claim.empty());
  }
  CHECK(report_text(a).find("criteria pass") != std::string::npos);
}
