#pragma once

#include "sectransfer/common.hpp"
#include "sectransfer/spectra.hpp"
#include "sectransfer/states.hpp"
#include "sectransfer/unitaries.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sectransfer {

/// A_from_B: the state belongs to the set where every SEC unitary moves
/// energy into A (E-passive rho_Diag^A(E) in every block, no (E, E)
/// coherence). B_from_A is the mirrored set. `None` only means "not a member";
/// it does not assert bidirectional flow.
enum class FlowDirection { AFromB, BFromA, None };
std::string_view to_string(FlowDirection d);

struct FlowClassification {
  FlowDirection direction = FlowDirection::None;
  std::vector<Rational> failing_blocks;
  bool has_useful_coherence = false;
};

/// No pair with eps_i < eps_j and q_i < q_j. Equal probabilities never fail.
bool is_e_passive(std::span<const double> probs, std::span<const double> energies);

/// Membership test for the receiving subsystem `target`.
FlowClassification classify_flow(const BipartiteState& state, const JointSpectrum& spec, Subsystem target,
                                 const Tolerances& tol = default_tolerances());

/// For a block whose E-local populations are not passive for `target`, the
/// unitary that swaps the worst-ordered pair there and acts as the identity
/// elsewhere. It lowers the target's energy. Returns nullopt for passive blocks.
std::optional<SecUnitary> passivity_witness(const BipartiteState& state, const JointSpectrum& spec,
                                            Subsystem target, const Rational& energy);

/// Gibbs populations exp(-beta e_i) / Z of a local Hamiltonian.
std::vector<double> gibbs_populations(const Hamiltonian& h, double beta);

/// rho_{beta_A} (x) rho_{beta_B}. Negative inverse temperatures are accepted;
/// check `is_negative_temperature` to flag them.
BipartiteState thermal_product(const Hamiltonian& h_a, const Hamiltonian& h_b, double beta_a, double beta_b);
inline bool is_negative_temperature(double beta_a, double beta_b) { return beta_a < 0.0 || beta_b < 0.0; }

/// Passive state of A times maximally active state of B, populations given
/// per local basis index. Throws NotPassive / NotMaxActive / LengthMismatch /
/// NotAState (normalization).
BipartiteState passive_max_active_product(std::span<const double> probs_a, std::span<const double> probs_b,
                                          const Hamiltonian& h_a, const Hamiltonian& h_b);

}  // namespace sectransfer
