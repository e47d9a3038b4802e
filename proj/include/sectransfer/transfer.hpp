#pragma once

#include "sectransfer/common.hpp"
#include "sectransfer/spectra.hpp"
#include "sectransfer/states.hpp"
#include "sectransfer/unitaries.hpp"

#include <map>

namespace sectransfer {

inline constexpr const char* kEnergyUnit = "hbar*omega";

/// Average-energy change of one subsystem under a SEC unitary, split into the
/// part sourced by rho_Diag and the part sourced by the coherences.
struct TransferReport {
  Subsystem target = Subsystem::A;
  double total = 0.0;
  double diagonal = 0.0;
  double coherent = 0.0;
  /// Local level index of the target -> eta_k.
  std::map<std::size_t, double> eta;
  std::map<Rational, double> per_block_diagonal;
};

struct DiagonalTransfer {
  double value = 0.0;
  std::map<Rational, double> per_block;
};

struct CoherentTransfer {
  double value = 0.0;
  std::map<std::size_t, double> eta;
};

/// Tr(H_t U rho U^dagger) - Tr(H_t rho) by dense evolution. Reference path for
/// every other computation in this header.
double transfer_direct(const Matrix& rho, const SecUnitary& u, const JointSpectrum& spec,
                       Subsystem target);
double transfer_direct(const BipartiteState& state, const SecUnitary& u, const JointSpectrum& spec,
                       Subsystem target);

/// Block-wise diagonal transfer: sum_E p_E Tr(H^(E) (U_E q_E U_E^dagger - q_E))
/// with q_E the normalized E-local populations. Blocks with p_E = 0 contribute 0.
DiagonalTransfer transfer_diagonal(const StateDecomposition& decomp, const SecUnitary& u,
                                   const JointSpectrum& spec, Subsystem target);

/// sum_k eta_k eps_k with
///   eta_k = 2 sum'_E sum_{i<j} Re(alpha^{(E,E)}_{ij} c_{i,k} conj(c_{j,k})),
/// where sum'_E runs over the blocks that contain local level k of the target.
/// Reads only the (E, E) coherence blocks.
CoherentTransfer transfer_coherent(const StateDecomposition& decomp, const SecUnitary& u,
                                   const JointSpectrum& spec, Subsystem target);

TransferReport analyze(const BipartiteState& state, const SecUnitary& u, const JointSpectrum& spec,
                       Subsystem target);

}  // namespace sectransfer
