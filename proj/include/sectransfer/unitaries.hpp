#pragma once

#include "sectransfer/common.hpp"
#include "sectransfer/rng.hpp"
#include "sectransfer/spectra.hpp"
#include "sectransfer/states.hpp"

#include <cstdint>
#include <map>

namespace sectransfer {

/// Strong-energy-conserving unitary stored as one d_E x d_E block per total
/// energy. Each block is the operator matrix in member order, so
///   U |i_E, E> = sum_j c(i, j) |j_E, E>   with   block(E)(j, i) = c(i, j).
class SecUnitary {
 public:
  SecUnitary() = default;
  /// Throws NotUnitary if any block deviates from unitarity by more than
  /// `tol.unitary`.
  explicit SecUnitary(std::map<Rational, Matrix> blocks, const Tolerances& tol = default_tolerances());

  static SecUnitary identity(const JointSpectrum& spec);

  const std::map<Rational, Matrix>& blocks() const { return blocks_; }
  /// Throws UnknownBlock.
  const Matrix& block(const Rational& energy) const;
  /// c^{(E)}_{i,j}: amplitude of |j_E> in U|i_E>.
  Complex coefficient(const Rational& energy, std::size_t i, std::size_t j) const;

  /// Throws BlockMismatch unless the block set and sizes equal the spectrum's.
  void check_matches(const JointSpectrum& spec) const;

 private:
  std::map<Rational, Matrix> blocks_;
};

Matrix to_full_matrix(const SecUnitary& u, const JointSpectrum& spec);

/// U rho U^dagger, on the raw operator.
Matrix evolve(const Matrix& rho, const SecUnitary& u, const JointSpectrum& spec);
BipartiteState evolve(const BipartiteState& state, const SecUnitary& u, const JointSpectrum& spec);

/// Haar-random n x n unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
Matrix haar_unitary(Eigen::Index n, CounterRng& rng);

/// Independent Haar block per energy; the stream of block E is keyed by
/// (seed, E), so the result is deterministic in `seed`.
SecUnitary sample_haar(const JointSpectrum& spec, std::uint64_t seed);

/// True iff some block has a column k and rows i != j with
/// c(i, k) * conj(c(j, k)) above `threshold` in magnitude.
bool is_potentially_coherent(const SecUnitary& u, double threshold = 1e-14);

/// Unitary that permutes members of each block: U|i_E> = |perm_E[i]>.
SecUnitary permutation_unitary(const JointSpectrum& spec,
                               const std::map<Rational, std::vector<std::size_t>>& perms);

}  // namespace sectransfer
