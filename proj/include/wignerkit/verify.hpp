#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wignerkit/types.hpp"

namespace wignerkit {

struct AnchorResult {
  std::string anchor;
  bool pass = false;
  int trials = 0;
  std::string detail;
};

struct SuiteConfig {
  std::vector<std::pair<int, int>> dims;  // (n, k) with 2k < n
  std::uint64_t seed = 0;
  int trials = 20;                 // per-anchor trial scale
  std::string inject_fault;        // empty, or one anchor name
};

/// The one-shot battery behind the verify-suite verb: one entry per lemma or
/// theorem exercised by this toolkit. Every anchor is expected to pass; the
/// inject_fault hook corrupts exactly that anchor's fixture so harness
/// failures stay detectable.
std::vector<AnchorResult> run_verify_suite(const SuiteConfig& config, const Tolerance& tol);

/// Anchor names accepted by SuiteConfig::inject_fault.
const std::vector<std::string>& suite_anchor_names();

}  // namespace wignerkit
