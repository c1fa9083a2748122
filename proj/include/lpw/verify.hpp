#pragma once

#include <string>
#include <vector>

// Quick self-check suites behind the `verify` CLI command. Each check
// measures one library invariant on a small deterministic input and compares
// against its documented tolerance. These are smoke checks; the test
// executables carry the deeper oracle comparisons.

namespace lpw {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0; // measured quantity
  double bound = 0.0; // tolerance or threshold it is compared against
  std::string detail; // short human-readable context
};

// suite in {grid, dyadic, norms, paraproduct, maximal, embeddings, all};
// throws std::invalid_argument for an unknown suite name
std::vector<CheckResult> verify_suite(const std::string& suite);

} // namespace lpw
