#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sectransfer {

struct CheckResult {
  std::string name;
  double worst = 0.0;      // largest violation seen (0 when none)
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// Property suite over built-in fixtures: the diagonal/coherent split, the
/// block-wise diagonal formula, coherence locality, the permutation optimizer,
/// the coherence bound, unidirectional flow and the two-qubit closed forms.
/// Deterministic in `seed`.
std::vector<CheckResult> run_property_suite(std::uint64_t seed);

void print_check_table(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace sectransfer
