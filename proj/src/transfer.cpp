#include "sectransfer/transfer.hpp"

#include <cmath>

namespace sectransfer {

namespace {

void check_decomposition(const StateDecomposition& decomp, const JointSpectrum& spec) {
  if (decomp.dim_a != spec.dim_a() || decomp.dim_b != spec.dim_b() ||
      decomp.diag_blocks.size() != spec.blocks().size()) {
    throw Error(ErrorKind::BlockMismatch, "decomposition was built for a different spectrum");
  }
}

}  // namespace

double transfer_direct(const Matrix& rho, const SecUnitary& u, const JointSpectrum& spec,
                       Subsystem target) {
  const Matrix evolved = evolve(rho, u, spec);
  return local_energy(evolved, spec, target) - local_energy(rho, spec, target);
}

double transfer_direct(const BipartiteState& state, const SecUnitary& u, const JointSpectrum& spec,
                       Subsystem target) {
  if (state.dim_a() != spec.dim_a() || state.dim_b() != spec.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimensions do not match the joint spectrum");
  }
  return transfer_direct(state.matrix(), u, spec, target);
}

DiagonalTransfer transfer_diagonal(const StateDecomposition& decomp, const SecUnitary& u,
                                   const JointSpectrum& spec, Subsystem target) {
  check_decomposition(decomp, spec);
  u.check_matches(spec);
  DiagonalTransfer out;
  for (const auto& blk : spec.blocks()) {
    const auto& diag = decomp.diag_blocks.at(blk.energy);
    if (diag.total <= 0.0) {
      out.per_block[blk.energy] = 0.0;
      continue;
    }
    const auto q = e_local_reduced(decomp, blk.energy, target);
    const auto energies = spec.e_local_energy_values(blk, target);
    const Matrix& m = u.block(blk.energy);
    double after = 0.0;
    double before = 0.0;
    for (std::size_t i = 0; i < blk.dim(); ++i) {
      before += q[i] * energies[i];
      for (std::size_t j = 0; j < blk.dim(); ++j) {
        after += q[i] * std::norm(m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))) * energies[j];
      }
    }
    const double contribution = diag.total * (after - before);
    out.per_block[blk.energy] = contribution;
    out.value += contribution;
  }
  return out;
}

CoherentTransfer transfer_coherent(const StateDecomposition& decomp, const SecUnitary& u,
                                   const JointSpectrum& spec, Subsystem target) {
  check_decomposition(decomp, spec);
  u.check_matches(spec);
  const auto& h = spec.hamiltonian(target);
  CoherentTransfer out;
  for (std::size_t k = 0; k < h.dim(); ++k) out.eta[k] = 0.0;

  for (const auto& blk : spec.blocks()) {
    const Matrix* alpha = decomp.coherence(blk.energy, blk.energy);
    if (alpha == nullptr) continue;
    const Matrix& m = u.block(blk.energy);
    const auto d = static_cast<Eigen::Index>(blk.dim());
    for (Eigen::Index k = 0; k < d; ++k) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
          // c(i, k) = m(k, i)
          acc += 2.0 * ((*alpha)(i, j) * m(k, i) * std::conj(m(k, j))).real();
        }
      }
      out.eta[blk.local_index(static_cast<std::size_t>(k), target)] += acc;
    }
  }
  for (const auto& [level, eta] : out.eta) out.value += eta * h.energy_value(level);
  return out;
}

TransferReport analyze(const BipartiteState& state, const SecUnitary& u, const JointSpectrum& spec,
                       Subsystem target) {
  const auto decomp = decompose(state, spec);
  auto diag = transfer_diagonal(decomp, u, spec, target);
  auto coh = transfer_coherent(decomp, u, spec, target);
  TransferReport report;
  report.target = target;
  report.total = transfer_direct(state, u, spec, target);
  report.diagonal = diag.value;
  report.coherent = coh.value;
  report.eta = std::move(coh.eta);
  report.per_block_diagonal = std::move(diag.per_block);
  return report;
}

}  // namespace sectransfer
