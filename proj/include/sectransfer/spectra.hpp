#pragma once

#include "sectransfer/common.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sectransfer {

/// Nondegenerate local energy spectrum. Basis index i is the position in
/// `energies()`; energies need not be sorted but must be pairwise distinct.
class Hamiltonian {
 public:
  explicit Hamiltonian(std::vector<Rational> energies, std::vector<std::string> labels = {});

  /// Snaps each value to a rational with relative tolerance `rel_tol`.
  /// Throws AmbiguousEnergy when a value has no close rational or when two
  /// inputs are within tolerance of each other without being equal.
  static Hamiltonian from_doubles(std::span<const double> energies, double rel_tol = 1e-9);

  /// Equally spaced levels 0, 1, ..., dim-1.
  static Hamiltonian ladder(std::size_t dim);

  std::size_t dim() const { return energies_.size(); }
  const std::vector<Rational>& energies() const { return energies_; }
  const Rational& energy(std::size_t i) const { return energies_.at(i); }
  double energy_value(std::size_t i) const { return to_double(energies_.at(i)); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const Hamiltonian& other) const { return energies_ == other.energies_; }

 private:
  std::vector<Rational> energies_;
  std::vector<std::string> labels_;
};

/// One product basis state |a>_A |b>_B inside an energy block.
struct BlockMember {
  std::size_t a = 0;
  std::size_t b = 0;
  bool operator==(const BlockMember&) const = default;
};

/// Eigenspace of H_A + H_B with total energy `energy`. Members are ordered by
/// increasing local-A energy; that order fixes every per-block matrix.
struct EnergyBlock {
  Rational energy;
  std::vector<BlockMember> members;

  std::size_t dim() const { return members.size(); }
  std::size_t local_index(std::size_t position, Subsystem s) const {
    return s == Subsystem::A ? members[position].a : members[position].b;
  }
};

/// Location of a product basis state inside the block partition.
struct BlockPosition {
  std::size_t block = 0;
  std::size_t position = 0;
};

class JointSpectrum {
 public:
  JointSpectrum(Hamiltonian h_a, Hamiltonian h_b);

  const Hamiltonian& hamiltonian(Subsystem s) const { return s == Subsystem::A ? h_a_ : h_b_; }
  std::size_t dim_a() const { return h_a_.dim(); }
  std::size_t dim_b() const { return h_b_.dim(); }
  std::size_t total_dim() const { return h_a_.dim() * h_b_.dim(); }

  /// Blocks sorted by increasing total energy.
  const std::vector<EnergyBlock>& blocks() const { return blocks_; }

  std::optional<std::size_t> find_block(const Rational& energy) const;
  /// Throws UnknownBlock.
  const EnergyBlock& block(const Rational& energy) const;

  /// Lexicographic (a, b) flattening used by every matrix in the library.
  std::size_t flat_index(std::size_t a, std::size_t b) const { return a * h_b_.dim() + b; }
  std::size_t flat_index(const BlockMember& m) const { return flat_index(m.a, m.b); }
  const BlockPosition& locate(std::size_t flat) const { return positions_.at(flat); }

  /// E-local energies of subsystem `s` in member order. Throws UnknownBlock.
  std::vector<Rational> e_local_energies(const Rational& energy, Subsystem s) const;
  std::vector<double> e_local_energy_values(const EnergyBlock& block, Subsystem s) const;

  /// Diagonal of H_s on the full product space.
  Eigen::VectorXd local_energy_diagonal(Subsystem s) const;

 private:
  Hamiltonian h_a_;
  Hamiltonian h_b_;
  std::vector<EnergyBlock> blocks_;
  std::vector<BlockPosition> positions_;
};

JointSpectrum build_joint_spectrum(const Hamiltonian& h_a, const Hamiltonian& h_b);

}  // namespace sectransfer
