#include "sectransfer/states.hpp"

#include "sectransfer/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace sectransfer {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void check_dims(const Matrix& m, std::size_t dim_a, std::size_t dim_b) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

void validate_density_matrix(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::NotAState, "density matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw Error(ErrorKind::NotAState, "density matrix has non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian) {
    throw Error(ErrorKind::NotAState, "Hermiticity violated: max|rho - rho^dagger| = " + fmt(herm) +
                                          " > tolerance " + fmt(tol.hermitian));
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    throw Error(ErrorKind::NotAState, "unit trace violated: |Tr rho - 1| = " +
                                          fmt(std::abs(tr - Complex(1.0, 0.0))) + " > tolerance " +
                                          fmt(tol.trace));
  }
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -tol.psd) {
    throw Error(ErrorKind::NotAState, "positivity violated: smallest eigenvalue " + fmt(lowest) +
                                          " < -" + fmt(tol.psd));
  }
}

BipartiteState::BipartiteState(Matrix matrix, std::size_t dim_a, std::size_t dim_b,
                               const Tolerances& tol)
    : matrix_(std::move(matrix)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 2 || dim_b < 2) {
    throw Error(ErrorKind::DimensionMismatch, "each subsystem needs dimension >= 2");
  }
  check_dims(matrix_, dim_a, dim_b);
  validate_density_matrix(matrix_, tol);
}

BipartiteState BipartiteState::product(const Matrix& rho_a, const Matrix& rho_b) {
  Matrix m(rho_a.rows() * rho_b.rows(), rho_a.cols() * rho_b.cols());
  for (Eigen::Index i = 0; i < rho_a.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho_a.cols(); ++j) {
      m.block(i * rho_b.rows(), j * rho_b.cols(), rho_b.rows(), rho_b.cols()) = rho_a(i, j) * rho_b;
    }
  }
  return BipartiteState(std::move(m), static_cast<std::size_t>(rho_a.rows()),
                        static_cast<std::size_t>(rho_b.rows()));
}

BipartiteState BipartiteState::diagonal(const std::vector<double>& probs, std::size_t dim_a,
                                        std::size_t dim_b) {
  if (probs.size() != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionMismatch, "probability list length does not match dimensions");
  }
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(probs.size()), static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probs[i];
  return BipartiteState(std::move(m), dim_a, dim_b);
}

BipartiteState BipartiteState::pure(const Vector& psi, std::size_t dim_a, std::size_t dim_b) {
  const Vector normalized = psi / psi.norm();
  return BipartiteState(normalized * normalized.adjoint(), dim_a, dim_b);
}

double StateDecomposition::p(const Rational& energy) const {
  auto it = diag_blocks.find(energy);
  if (it == diag_blocks.end()) throw Error(ErrorKind::UnknownBlock, "no block E = " + to_string(energy));
  return it->second.total;
}

const Matrix* StateDecomposition::coherence(const Rational& e1, const Rational& e2) const {
  auto it = coherence_blocks.find({e1, e2});
  return it == coherence_blocks.end() ? nullptr : &it->second;
}

Matrix StateDecomposition::diagonal_matrix(const JointSpectrum& spec) const {
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  Matrix m = Matrix::Zero(n, n);
  for (const auto& blk : spec.blocks()) {
    const auto& probs = diag_blocks.at(blk.energy).probs;
    for (std::size_t i = 0; i < blk.dim(); ++i) {
      const auto f = static_cast<Eigen::Index>(spec.flat_index(blk.members[i]));
      m(f, f) = probs[i];
    }
  }
  return m;
}

Matrix StateDecomposition::coherence_matrix(const JointSpectrum& spec) const {
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [key, alpha] : coherence_blocks) {
    const auto& row_blk = spec.block(key.first);
    const auto& col_blk = spec.block(key.second);
    for (std::size_t i = 0; i < row_blk.dim(); ++i) {
      for (std::size_t j = 0; j < col_blk.dim(); ++j) {
        m(static_cast<Eigen::Index>(spec.flat_index(row_blk.members[i])),
          static_cast<Eigen::Index>(spec.flat_index(col_blk.members[j]))) =
            alpha(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return m;
}

Matrix StateDecomposition::reassemble(const JointSpectrum& spec) const {
  return diagonal_matrix(spec) + coherence_matrix(spec);
}

StateDecomposition StateDecomposition::without_cross_block_coherence() const {
  StateDecomposition out = *this;
  std::erase_if(out.coherence_blocks, [](const auto& kv) { return kv.first.first != kv.first.second; });
  return out;
}

StateDecomposition StateDecomposition::without_coherence() const {
  StateDecomposition out = *this;
  out.coherence_blocks.clear();
  return out;
}

StateDecomposition decompose(const Matrix& rho, const JointSpectrum& spec, const Tolerances& tol) {
  check_dims(rho, spec.dim_a(), spec.dim_b());
  StateDecomposition out;
  out.dim_a = spec.dim_a();
  out.dim_b = spec.dim_b();
  auto clean = [&](Complex z) {
    return std::abs(z) < tol.storage_zero ? Complex(0.0, 0.0) : z;
  };
  for (const auto& blk : spec.blocks()) {
    DiagBlock d{blk.energy, {}, 0.0};
    d.probs.reserve(blk.dim());
    for (const auto& m : blk.members) {
      const auto f = static_cast<Eigen::Index>(spec.flat_index(m));
      const double prob = clean(rho(f, f)).real();
      d.probs.push_back(prob);
      d.total += prob;
    }
    out.diag_blocks.emplace(blk.energy, std::move(d));
  }
  for (const auto& row_blk : spec.blocks()) {
    for (const auto& col_blk : spec.blocks()) {
      Matrix alpha(static_cast<Eigen::Index>(row_blk.dim()), static_cast<Eigen::Index>(col_blk.dim()));
      bool nonzero = false;
      const bool same = row_blk.energy == col_blk.energy;
      for (std::size_t i = 0; i < row_blk.dim(); ++i) {
        for (std::size_t j = 0; j < col_blk.dim(); ++j) {
          Complex z = (same && i == j)
                          ? Complex(0.0, 0.0)
                          : clean(rho(static_cast<Eigen::Index>(spec.flat_index(row_blk.members[i])),
                                      static_cast<Eigen::Index>(spec.flat_index(col_blk.members[j]))));
          alpha(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
          nonzero = nonzero || z != Complex(0.0, 0.0);
        }
      }
      if (nonzero) out.coherence_blocks.emplace(BlockPair{row_blk.energy, col_blk.energy}, std::move(alpha));
    }
  }
  return out;
}

StateDecomposition decompose(const BipartiteState& state, const JointSpectrum& spec,
                             const Tolerances& tol) {
  if (state.dim_a() != spec.dim_a() || state.dim_b() != spec.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimensions do not match the joint spectrum");
  }
  return decompose(state.matrix(), spec, tol);
}

std::vector<double> e_local_reduced(const StateDecomposition& decomp, const Rational& energy,
                                    Subsystem /*system*/) {
  auto it = decomp.diag_blocks.find(energy);
  if (it == decomp.diag_blocks.end()) {
    throw Error(ErrorKind::UnknownBlock, "no block E = " + to_string(energy));
  }
  const auto& blk = it->second;
  if (blk.total <= 0.0) {
    throw Error(ErrorKind::ZeroBlock, "p_E = 0 for E = " + to_string(energy));
  }
  std::vector<double> out(blk.probs);
  for (auto& p : out) p /= blk.total;
  return out;
}

Matrix partial_trace(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem keep) {
  check_dims(m, dim_a, dim_b);
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index a1 = 0; a1 < da; ++a1)
      for (Eigen::Index a2 = 0; a2 < da; ++a2)
        for (Eigen::Index b = 0; b < db; ++b) out(a1, a2) += m(a1 * db + b, a2 * db + b);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index b1 = 0; b1 < db; ++b1)
    for (Eigen::Index b2 = 0; b2 < db; ++b2)
      for (Eigen::Index a = 0; a < da; ++a) out(b1, b2) += m(a * db + b1, a * db + b2);
  return out;
}

Matrix dephase_local(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem system) {
  check_dims(m, dim_a, dim_b);
  Matrix out = m;
  const auto db = static_cast<Eigen::Index>(dim_b);
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      const bool differs = system == Subsystem::A ? (r / db != c / db) : (r % db != c % db);
      if (differs) out(r, c) = 0.0;
    }
  }
  return out;
}

BipartiteState dephase_local(const BipartiteState& state, Subsystem system) {
  return BipartiteState(dephase_local(state.matrix(), state.dim_a(), state.dim_b(), system),
                        state.dim_a(), state.dim_b());
}

double local_energy(const Matrix& rho, const JointSpectrum& spec, Subsystem system) {
  check_dims(rho, spec.dim_a(), spec.dim_b());
  const Eigen::VectorXd h = spec.local_energy_diagonal(system);
  return (h.array() * rho.diagonal().real().array()).sum();
}

double local_energy(const BipartiteState& state, const JointSpectrum& spec, Subsystem system) {
  return local_energy(state.matrix(), spec, system);
}

BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed,
                            std::size_t rank) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  const auto k = rank == 0 ? n : static_cast<Eigen::Index>(rank);
  CounterRng rng(derive_stream(seed, {0x57a7e, dim_a, dim_b}));
  Matrix g(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return BipartiteState(std::move(rho), dim_a, dim_b);
}

}  // namespace sectransfer
