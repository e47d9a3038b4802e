#pragma once

#include "sectransfer/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sectransfer::cli {

enum class Command { Decompose, Analyze, Optimize, Classify, QubitMax, BellScan, Verify };

std::optional<Command> parse_command(const std::string& name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInvariant = 3;

struct RunConfig {
  Command command = Command::Verify;
  /// Problem bundle: {"h_a": ..., "h_b": ..., "state": ..., "unitary": ...}.
  std::optional<std::string> input;
  /// Report path; stdout when empty.
  std::optional<std::string> output;
  /// decompose: additional CSV summary path.
  std::optional<std::string> csv;
  /// Built-in state: max-coherence, thermal, bell, passive-max-active.
  std::optional<std::string> fixture;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> resolution;
  std::optional<double> beta_a;
  std::optional<double> beta_b;
  std::vector<double> probs_a;
  std::vector<double> probs_b;
  Subsystem target = Subsystem::A;
  /// optimize: exact | permutation | monte-carlo
  std::string method = "exact";
  /// qubit-max: free | fixed
  std::string alpha_mode = "free";
  Tolerances tolerances;
};

/// Applies one KEY=VAL override; throws Error(Parse) on unknown keys.
void apply_tolerance(Tolerances& tol, const std::string& assignment);

/// Executes one command. Reports go to `out` (or the --output file),
/// diagnostics to `err`. Returns 0, 2 (validation) or 3 (numerical invariant).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sectransfer::cli
