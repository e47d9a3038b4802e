#include "sectransfer/optimize.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdlib>
#include <future>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace sectransfer {

namespace {

std::vector<std::size_t> order_by_energy(std::span<const double> energies, bool ascending) {
  std::vector<std::size_t> idx(energies.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return ascending ? energies[x] < energies[y] : energies[x] > energies[y];
  });
  return idx;
}

// Largest probability goes to the first slot of `slots`. Sources with equal
// probability are taken in the same energy order as the slots.
Rearrangement rearrange(std::span<const double> probs, std::span<const double> energies, bool ascending) {
  if (probs.size() != energies.size()) {
    throw Error(ErrorKind::LengthMismatch, "probabilities (" + std::to_string(probs.size()) +
                                               ") and energies (" + std::to_string(energies.size()) +
                                               ") differ in length");
  }
  const auto slots = order_by_energy(energies, ascending);
  std::vector<std::size_t> rank(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) rank[slots[k]] = k;

  std::vector<std::size_t> sources(probs.size());
  std::iota(sources.begin(), sources.end(), 0);
  std::sort(sources.begin(), sources.end(), [&](std::size_t x, std::size_t y) {
    if (probs[x] != probs[y]) return probs[x] > probs[y];
    return rank[x] < rank[y];
  });

  Rearrangement out;
  out.permutation.resize(probs.size());
  out.probs.resize(probs.size());
  for (std::size_t k = 0; k < sources.size(); ++k) {
    out.permutation[sources[k]] = slots[k];
    out.probs[slots[k]] = probs[sources[k]];
  }
  return out;
}

Matrix block_restriction(const Matrix& rho, const EnergyBlock& blk, const JointSpectrum& spec) {
  const auto d = static_cast<Eigen::Index>(blk.dim());
  Matrix sigma(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      sigma(i, j) = rho(static_cast<Eigen::Index>(spec.flat_index(blk.members[static_cast<std::size_t>(i)])),
                        static_cast<Eigen::Index>(spec.flat_index(blk.members[static_cast<std::size_t>(j)])));
  return sigma;
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

Rearrangement passive_rearrange(std::span<const double> probs, std::span<const double> energies) {
  return rearrange(probs, energies, true);
}

Rearrangement max_active_rearrange(std::span<const double> probs, std::span<const double> energies) {
  return rearrange(probs, energies, false);
}

std::string_view to_string(OptimizationMethod m) {
  switch (m) {
    case OptimizationMethod::DiagonalExact: return "diagonal_exact";
    case OptimizationMethod::BlockEigenExact: return "block_eigen_exact";
    case OptimizationMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

SecUnitary build_theorem3_unitary(const StateDecomposition& decomp, const JointSpectrum& spec,
                                  Subsystem target, Extremum extremum) {
  std::map<Rational, std::vector<std::size_t>> perms;
  for (const auto& blk : spec.blocks()) {
    const auto& diag = decomp.diag_blocks.at(blk.energy);
    if (diag.total <= 0.0) continue;
    const auto energies = spec.e_local_energy_values(blk, target);
    auto r = extremum == Extremum::Maximize ? max_active_rearrange(diag.probs, energies)
                                            : passive_rearrange(diag.probs, energies);
    perms.emplace(blk.energy, std::move(r.permutation));
  }
  return permutation_unitary(spec, perms);
}

OptimizationResult maximize_transfer_exact(const BipartiteState& state, const JointSpectrum& spec,
                                           Subsystem target, Extremum extremum) {
  if (state.dim_a() != spec.dim_a() || state.dim_b() != spec.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimensions do not match the joint spectrum");
  }
  const bool maximize = extremum == Extremum::Maximize;
  std::map<Rational, Matrix> blocks;
  double value = 0.0;
  for (const auto& blk : spec.blocks()) {
    const Matrix sigma = block_restriction(state.matrix(), blk, spec);
    const auto energies = spec.e_local_energy_values(blk, target);
    const auto d = static_cast<Eigen::Index>(blk.dim());

    double initial = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) initial += sigma(i, i).real() * energies[static_cast<std::size_t>(i)];

    std::vector<double> weights(blk.dim());
    Matrix basis;  // columns: vectors to be sent onto energy eigenstates
    if (is_diagonal(sigma)) {
      for (Eigen::Index i = 0; i < d; ++i) weights[static_cast<std::size_t>(i)] = sigma(i, i).real();
      basis = Matrix::Identity(d, d);
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (sigma + sigma.adjoint()));
      const auto& ev = solver.eigenvalues();
      for (Eigen::Index i = 0; i < d; ++i) weights[static_cast<std::size_t>(i)] = ev(i);
      basis = solver.eigenvectors();
    }
    const auto r = maximize ? max_active_rearrange(weights, energies) : passive_rearrange(weights, energies);

    Matrix u = Matrix::Zero(d, d);
    double final_energy = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto dest = r.permutation[static_cast<std::size_t>(k)];
      u.row(static_cast<Eigen::Index>(dest)) = basis.col(k).adjoint();
      final_energy += weights[static_cast<std::size_t>(k)] * energies[dest];
    }
    value += final_energy - initial;
    blocks.emplace(blk.energy, std::move(u));
  }
  OptimizationResult result;
  result.value = value;
  result.unitary = SecUnitary(std::move(blocks));
  result.method = OptimizationMethod::BlockEigenExact;
  return result;
}

std::size_t worker_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SEC_TRANSFER_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested > 0) n = static_cast<std::size_t>(requested);
    } catch (const std::exception&) {
      // unparseable value: keep the default
    }
  }
  return n;
}

OptimizationResult monte_carlo_max(const BipartiteState& state, const JointSpectrum& spec,
                                   Subsystem target, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw Error(ErrorKind::OutOfRange, "n_samples must be >= 1");
  if (state.dim_a() != spec.dim_a() || state.dim_b() != spec.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimensions do not match the joint spectrum");
  }
  struct Best {
    double value;
    std::size_t index;
  };
  auto scan = [&](std::size_t begin, std::size_t end) {
    Best best{-std::numeric_limits<double>::infinity(), begin};
    for (std::size_t s = begin; s < end; ++s) {
      const auto u = sample_haar(spec, derive_stream(seed, {s}));
      const double v = transfer_direct(state.matrix(), u, spec, target);
      if (v > best.value) best = {v, s};
    }
    return best;
  };

  const std::size_t workers = std::min(worker_threads(), n_samples);
  std::vector<Best> partial;
  if (workers <= 1) {
    partial.push_back(scan(0, n_samples));
  } else {
    std::vector<std::future<Best>> futures;
    const std::size_t chunk = (n_samples + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n_samples; begin += chunk) {
      futures.push_back(std::async(std::launch::async, scan, begin, std::min(n_samples, begin + chunk)));
    }
    for (auto& f : futures) partial.push_back(f.get());
  }
  Best best = partial.front();
  for (const auto& b : partial) {
    if (b.value > best.value || (b.value == best.value && b.index < best.index)) best = b;
  }
  OptimizationResult result;
  result.value = best.value;
  result.unitary = sample_haar(spec, derive_stream(seed, {best.index}));
  result.method = OptimizationMethod::MonteCarlo;
  result.samples = n_samples;
  return result;
}

BipartiteState dephase_joint(const BipartiteState& state, const JointSpectrum& spec) {
  const auto decomp = decompose(state, spec);
  return BipartiteState(decomp.diagonal_matrix(spec), state.dim_a(), state.dim_b());
}

CoherenceBound check_coherence_bound(const BipartiteState& state, const JointSpectrum& spec,
                                     Subsystem target, double slack) {
  CoherenceBound out;
  out.lhs = maximize_transfer_exact(state, spec, target).value;
  out.rhs = maximize_transfer_exact(dephase_joint(state, spec), spec, target).value;
  out.holds = out.lhs >= out.rhs - slack;
  return out;
}

}  // namespace sectransfer
