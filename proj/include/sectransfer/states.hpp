#pragma once

#include "sectransfer/common.hpp"
#include "sectransfer/spectra.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace sectransfer {

/// Density matrix over the product basis, rows/cols in lexicographic (a, b)
/// order. Construction validates Hermiticity, unit trace and positivity.
class BipartiteState {
 public:
  BipartiteState(Matrix matrix, std::size_t dim_a, std::size_t dim_b,
                 const Tolerances& tol = default_tolerances());

  const Matrix& matrix() const { return matrix_; }
  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t dim() const { return dim_a_ * dim_b_; }

  /// Product state from two local density matrices.
  static BipartiteState product(const Matrix& rho_a, const Matrix& rho_b);
  static BipartiteState diagonal(const std::vector<double>& probs, std::size_t dim_a,
                                 std::size_t dim_b);
  static BipartiteState pure(const Vector& psi, std::size_t dim_a, std::size_t dim_b);

 private:
  Matrix matrix_;
  std::size_t dim_a_;
  std::size_t dim_b_;
};

/// Throws NotAState naming the violated condition.
void validate_density_matrix(const Matrix& m, const Tolerances& tol = default_tolerances());

/// Restriction of rho_Diag to one energy block: the joint probabilities
/// p(eps_i, E) in member order and their sum p_E.
struct DiagBlock {
  Rational energy;
  std::vector<double> probs;
  double total = 0.0;
};

using BlockPair = std::pair<Rational, Rational>;

/// rho = rho_Diag + chi, with chi split into (E, E') blocks. Only blocks that
/// carry a nonzero entry are stored.
struct StateDecomposition {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::map<Rational, DiagBlock> diag_blocks;
  /// alpha(i, j) = <i_E, E| rho |j_E', E'> with the (E = E', i = j) entries zeroed.
  std::map<BlockPair, Matrix> coherence_blocks;

  double p(const Rational& energy) const;
  const Matrix* coherence(const Rational& e1, const Rational& e2) const;

  Matrix diagonal_matrix(const JointSpectrum& spec) const;
  Matrix coherence_matrix(const JointSpectrum& spec) const;
  /// rho_Diag + chi.
  Matrix reassemble(const JointSpectrum& spec) const;

  /// Copy keeping only the (E, E) coherences.
  StateDecomposition without_cross_block_coherence() const;
  StateDecomposition without_coherence() const;
};

StateDecomposition decompose(const BipartiteState& state, const JointSpectrum& spec,
                             const Tolerances& tol = default_tolerances());
/// Operator-level variant; does not require positivity.
StateDecomposition decompose(const Matrix& rho, const JointSpectrum& spec,
                             const Tolerances& tol = default_tolerances());

/// Normalized E-local populations p(eps_i, E) / p_E in member order. Because
/// every member pairs one A level with one B level, the list is the same for
/// both subsystems; only the attached energies differ. Throws ZeroBlock.
std::vector<double> e_local_reduced(const StateDecomposition& decomp, const Rational& energy,
                                    Subsystem system);

Matrix partial_trace(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem keep);

/// Zero every element connecting different local energies of `system`.
Matrix dephase_local(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem system);
BipartiteState dephase_local(const BipartiteState& state, Subsystem system);

/// Tr(H_system rho).
double local_energy(const Matrix& rho, const JointSpectrum& spec, Subsystem system);
double local_energy(const BipartiteState& state, const JointSpectrum& spec, Subsystem system);

/// Ginibre-distributed mixed state G G^dagger / Tr(G G^dagger); deterministic in seed.
BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed,
                            std::size_t rank = 0);

}  // namespace sectransfer
