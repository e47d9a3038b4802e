#pragma once

#include "sectransfer/common.hpp"
#include "sectransfer/spectra.hpp"
#include "sectransfer/states.hpp"
#include "sectransfer/transfer.hpp"
#include "sectransfer/unitaries.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sectransfer {

/// `permutation[i]` is the destination slot of input entry i, so
/// `probs[permutation[i]] == input[i]`.
struct Rearrangement {
  std::vector<std::size_t> permutation;
  std::vector<double> probs;
};

/// Minimum-energy reordering: the largest probability sits on the lowest
/// energy. Equal probabilities keep their relative energy order, so an
/// already passive input maps to the identity.
Rearrangement passive_rearrange(std::span<const double> probs, std::span<const double> energies);
/// Maximum-energy reordering, with the mirrored tie rule.
Rearrangement max_active_rearrange(std::span<const double> probs, std::span<const double> energies);

enum class OptimizationMethod { DiagonalExact, BlockEigenExact, MonteCarlo };
std::string_view to_string(OptimizationMethod m);

enum class Extremum { Maximize, Minimize };

struct OptimizationResult {
  double value = 0.0;
  SecUnitary unitary;
  OptimizationMethod method = OptimizationMethod::BlockEigenExact;
  std::optional<std::size_t> samples;
};

/// Per block, the permutation sending rho_Diag^t(E) to its maximum-energy
/// (or, for Minimize, passive) rearrangement. Never potentially coherent.
SecUnitary build_theorem3_unitary(const StateDecomposition& decomp, const JointSpectrum& spec,
                                  Subsystem target, Extremum extremum = Extremum::Maximize);

/// Exact optimum over all SEC unitaries, coherences included. Each block's
/// restriction sigma_E is diagonalized and its eigenvalues are paired with the
/// E-local target energies in sorted order (trace rearrangement inequality);
/// the optimal U_E rotates the eigenbasis onto the energy basis.
OptimizationResult maximize_transfer_exact(const BipartiteState& state, const JointSpectrum& spec,
                                           Subsystem target,
                                           Extremum extremum = Extremum::Maximize);

/// Best of `n_samples` Haar-random SEC unitaries. Sample s uses stream
/// (seed, s); the result does not depend on the thread count.
OptimizationResult monte_carlo_max(const BipartiteState& state, const JointSpectrum& spec,
                                   Subsystem target, std::size_t n_samples, std::uint64_t seed);

struct CoherenceBound {
  double lhs = 0.0;  // optimum for rho
  double rhs = 0.0;  // optimum for rho_Diag
  bool holds = false;
};

CoherenceBound check_coherence_bound(const BipartiteState& state, const JointSpectrum& spec,
                                     Subsystem target, double slack = 1e-12);

/// rho_Diag as a state.
BipartiteState dephase_joint(const BipartiteState& state, const JointSpectrum& spec);

/// Worker count for batch sampling: SEC_TRANSFER_THREADS if set, else the
/// hardware concurrency.
std::size_t worker_threads();

}  // namespace sectransfer
