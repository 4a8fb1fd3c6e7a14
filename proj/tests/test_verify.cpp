#include "doctest.h"

#include <string>

#include "coulombium/error.hpp"
#include "coulombium/verify.hpp"

using namespace coulombium;

namespace {

const VerifyCheck* find_check(const VerifyReport& r, const std::string& prefix) {
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("property suites pass") {
  for (std::string_view suite : {"forms", "bnorm", "rearrange", "delta", "innerprod"}) {
    CAPTURE(suite);
    const VerifyReport r = run_verify_suite(suite, VerifyOptions{});
    CHECK(r.suite == suite);
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    CHECK(r.passed());
  }
}

TEST_CASE("suite list and unknown names") {
  CHECK(verify_suite_names().size() == 6);
  try {
    (void)run_verify_suite("nope", VerifyOptions{});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("reports are reproducible for a seed") {
  VerifyOptions opt;
  opt.seed = 42;
  const VerifyReport a = run_verify_suite("innerprod", opt);
  const VerifyReport b = run_verify_suite("innerprod", opt);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) CHECK(a.checks[k].measured == b.checks[k].measured);
  CHECK(a.seed == 42);
}

TEST_CASE("counterexample suite runs and its sanity checks hold") {
  const VerifyReport r = run_verify_suite("counterexample", VerifyOptions{});
  for (const auto& c : r.checks) MESSAGE(c.name << " measured=" << c.measured << " threshold=" << c.threshold);
  REQUIRE(!r.checks.empty());
  for (const char* name : {"norm_error_max", "totals_not_decreasing_from_n20"}) {
    const VerifyCheck* c = find_check(r, name);
    REQUIRE(c != nullptr);
    CHECK(c->passed);
  }
}
