#include "sectransfer/unitaries.hpp"

#include <Eigen/QR>

#include <cmath>

namespace sectransfer {

namespace {

std::uint64_t rational_tag(const Rational& r) {
  return mix64(static_cast<std::uint64_t>(r.numerator())) ^
         (mix64(static_cast<std::uint64_t>(r.denominator())) * 3);
}

}  // namespace

SecUnitary::SecUnitary(std::map<Rational, Matrix> blocks, const Tolerances& tol)
    : blocks_(std::move(blocks)) {
  for (const auto& [energy, m] : blocks_) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw Error(ErrorKind::NotUnitary, "block E = " + to_string(energy) + " is not square");
    }
    const double dev = (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    if (!(dev <= tol.unitary)) {
      throw Error(ErrorKind::NotUnitary, "block E = " + to_string(energy) +
                                             ": max|U^dagger U - I| = " + std::to_string(dev) +
                                             " exceeds tolerance");
    }
  }
}

SecUnitary SecUnitary::identity(const JointSpectrum& spec) {
  std::map<Rational, Matrix> blocks;
  for (const auto& blk : spec.blocks()) {
    const auto d = static_cast<Eigen::Index>(blk.dim());
    blocks.emplace(blk.energy, Matrix::Identity(d, d));
  }
  return SecUnitary(std::move(blocks));
}

const Matrix& SecUnitary::block(const Rational& energy) const {
  auto it = blocks_.find(energy);
  if (it == blocks_.end()) throw Error(ErrorKind::UnknownBlock, "no unitary block E = " + to_string(energy));
  return it->second;
}

Complex SecUnitary::coefficient(const Rational& energy, std::size_t i, std::size_t j) const {
  return block(energy)(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
}

void SecUnitary::check_matches(const JointSpectrum& spec) const {
  if (blocks_.size() != spec.blocks().size()) {
    throw Error(ErrorKind::BlockMismatch, "unitary has " + std::to_string(blocks_.size()) +
                                              " blocks, spectrum has " +
                                              std::to_string(spec.blocks().size()));
  }
  for (const auto& blk : spec.blocks()) {
    auto it = blocks_.find(blk.energy);
    if (it == blocks_.end()) {
      throw Error(ErrorKind::BlockMismatch, "unitary lacks block E = " + to_string(blk.energy));
    }
    if (static_cast<std::size_t>(it->second.rows()) != blk.dim()) {
      throw Error(ErrorKind::BlockMismatch, "block E = " + to_string(blk.energy) + " has size " +
                                                std::to_string(it->second.rows()) + ", expected " +
                                                std::to_string(blk.dim()));
    }
  }
}

Matrix to_full_matrix(const SecUnitary& u, const JointSpectrum& spec) {
  u.check_matches(spec);
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  Matrix full = Matrix::Zero(n, n);
  for (const auto& blk : spec.blocks()) {
    const Matrix& m = u.block(blk.energy);
    for (std::size_t r = 0; r < blk.dim(); ++r) {
      for (std::size_t c = 0; c < blk.dim(); ++c) {
        full(static_cast<Eigen::Index>(spec.flat_index(blk.members[r])),
             static_cast<Eigen::Index>(spec.flat_index(blk.members[c]))) =
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return full;
}

Matrix evolve(const Matrix& rho, const SecUnitary& u, const JointSpectrum& spec) {
  const Matrix full = to_full_matrix(u, spec);
  if (rho.rows() != full.rows() || rho.cols() != full.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "operator and unitary dimensions differ");
  }
  return full * rho * full.adjoint();
}

BipartiteState evolve(const BipartiteState& state, const SecUnitary& u, const JointSpectrum& spec) {
  if (state.dim_a() != spec.dim_a() || state.dim_b() != spec.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimensions do not match the joint spectrum");
  }
  Matrix out = evolve(state.matrix(), u, spec);
  out = 0.5 * (out + out.adjoint());
  return BipartiteState(std::move(out), state.dim_a(), state.dim_b());
}

Matrix haar_unitary(Eigen::Index n, CounterRng& rng) {
  Matrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

SecUnitary sample_haar(const JointSpectrum& spec, std::uint64_t seed) {
  std::map<Rational, Matrix> blocks;
  for (const auto& blk : spec.blocks()) {
    CounterRng rng(derive_stream(seed, {rational_tag(blk.energy)}));
    blocks.emplace(blk.energy, haar_unitary(static_cast<Eigen::Index>(blk.dim()), rng));
  }
  return SecUnitary(std::move(blocks));
}

bool is_potentially_coherent(const SecUnitary& u, double threshold) {
  for (const auto& [energy, m] : u.blocks()) {
    // Row k of the operator matrix holds c(., k).
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      for (Eigen::Index i = 0; i < m.cols(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
          if (std::abs(m(k, i) * std::conj(m(k, j))) > threshold) return true;
        }
      }
    }
  }
  return false;
}

SecUnitary permutation_unitary(const JointSpectrum& spec,
                               const std::map<Rational, std::vector<std::size_t>>& perms) {
  std::map<Rational, Matrix> blocks;
  for (const auto& blk : spec.blocks()) {
    const auto d = static_cast<Eigen::Index>(blk.dim());
    Matrix m = Matrix::Zero(d, d);
    auto it = perms.find(blk.energy);
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto dest = it == perms.end() ? i : static_cast<Eigen::Index>(it->second.at(static_cast<std::size_t>(i)));
      m(dest, i) = 1.0;
    }
    blocks.emplace(blk.energy, std::move(m));
  }
  return SecUnitary(std::move(blocks));
}

}  // namespace sectransfer
