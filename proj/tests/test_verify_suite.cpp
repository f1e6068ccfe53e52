#include "doctest.h"
#include "wignerkit/verify.hpp"

using namespace wignerkit;

namespace {

const Tolerance tol;

SuiteConfig small_config() {
  SuiteConfig config;
  config.dims = {{5, 2}};
  config.seed = 42;
  config.trials = 8;
  return config;
}

}  // namespace

TEST_CASE("verify suite passes on the default fixtures") {
  const auto results = run_verify_suite(small_config(), tol);
  REQUIRE(results.size() == suite_anchor_names().size());
  for (const auto& r : results) {
    INFO("anchor ", r.anchor, " detail: ", r.detail);
    CHECK(r.pass);
    CHECK(r.trials > 0);
  }
}

TEST_CASE("fault injection flips exactly the targeted anchor") {
  for (const std::string& target : suite_anchor_names()) {
    SuiteConfig config = small_config();
    config.inject_fault = target;
    const auto results = run_verify_suite(config, tol);
    for (const auto& r : results) {
      INFO("target ", target, " anchor ", r.anchor, " detail: ", r.detail);
      CHECK(r.pass == (r.anchor != target));
    }
  }
}

TEST_CASE("suite validates its configuration") {
  SuiteConfig config = small_config();
  config.dims.clear();
  CHECK_THROWS_AS(run_verify_suite(config, tol), std::invalid_argument);

  config = small_config();
  config.dims = {{4, 2}};  // 2k = n
  CHECK_THROWS_AS(run_verify_suite(config, tol), std::invalid_argument);

  config = small_config();
  config.inject_fault = "no-such-anchor";
  CHECK_THROWS_AS(run_verify_suite(config, tol), std::invalid_argument);
}
