#include "sectransfer/qubits.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sectransfer {

namespace {

constexpr double kPhysicalSlack = 1e-12;

double wrap_phase(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  return w;
}

Matrix spin_flip() {
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

void require_two_qubit(const BipartiteState& state) {
  if (state.dim_a() != 2 || state.dim_b() != 2) {
    throw Error(ErrorKind::NotTwoQubit, "expected a 2x2 system, got " + std::to_string(state.dim_a()) + "x" +
                                            std::to_string(state.dim_b()));
  }
}

}  // namespace

JointSpectrum two_qubit_spectrum() { return JointSpectrum(Hamiltonian::ladder(2), Hamiltonian::ladder(2)); }

void TwoQubitParams::validate() const {
  for (double p : {p00, p01, p10, p11}) {
    if (!(p >= -kPhysicalSlack)) throw Error(ErrorKind::Unphysical, "negative population");
  }
  if (std::abs(p00 + p01 + p10 + p11 - 1.0) > kPhysicalSlack) {
    throw Error(ErrorKind::Unphysical, "populations do not sum to 1");
  }
  if (std::norm(alpha) > p01 * p10 + kPhysicalSlack) {
    throw Error(ErrorKind::Unphysical, "|alpha|^2 exceeds p01 * p10");
  }
}

BipartiteState TwoQubitParams::to_state() const {
  validate();
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = p00;
  m(1, 1) = p01;
  m(2, 2) = p10;
  m(3, 3) = p11;
  m(1, 2) = alpha;
  m(2, 1) = std::conj(alpha);
  return BipartiteState(std::move(m), 2, 2);
}

TwoQubitParams TwoQubitParams::from_state(const BipartiteState& state) {
  require_two_qubit(state);
  const Matrix& m = state.matrix();
  return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(1, 2)};
}

SecUnitary sec_unitary_2q(const SecParams2Q& params) {
  if (!(params.r >= 0.0 && params.r <= 1.0)) throw Error(ErrorKind::OutOfRange, "r must lie in [0, 1]");
  const Complex i(0.0, 1.0);
  const double c = std::sqrt(1.0 - params.r * params.r);
  const double varphi = params.phi - params.theta01 + params.theta10;
  Matrix mid(2, 2);
  // column 0: U|01>, column 1: U|10> (members ordered by the A energy)
  mid(0, 0) = std::exp(i * params.theta01) * c;
  mid(1, 0) = std::exp(i * params.theta01) * params.r * std::exp(i * varphi);
  mid(0, 1) = -std::exp(i * params.theta10) * params.r * std::exp(-i * varphi);
  mid(1, 1) = std::exp(i * params.theta10) * c;
  std::map<Rational, Matrix> blocks;
  blocks.emplace(Rational(0), Matrix::Constant(1, 1, std::exp(i * params.theta00)));
  blocks.emplace(Rational(1), std::move(mid));
  blocks.emplace(Rational(2), Matrix::Constant(1, 1, std::exp(i * params.theta11)));
  return SecUnitary(std::move(blocks));
}

double delta_diag_2q(const TwoQubitParams& params, double r) { return (params.p01 - params.p10) * r * r; }

double delta_coh_2q(const TwoQubitParams& params, double r, double phi) {
  const Complex phase = std::polar(1.0, phi);
  return 2.0 * (params.alpha * phase).real() * r * std::sqrt(std::max(0.0, 1.0 - r * r));
}

double delta_pm_2q(const TwoQubitParams& params, double r, int sign) {
  const double coh = 2.0 * r * std::sqrt(std::max(0.0, params.p01 * params.p10 * (1.0 - r * r)));
  return (params.p01 - params.p10) * r * r + (sign >= 0 ? coh : -coh);
}

QubitOptimum max_transfer_2q(const TwoQubitParams& params, Subsystem target, AlphaMode mode) {
  params.validate();
  // With x = r^2 = (1 - cos t) / 2 the objective is s d / 2 - (s d / 2) cos t + a sin t,
  // whose maximum over t in [0, pi] is s d / 2 + sqrt(d^2 / 4 + a^2).
  const double s = target == Subsystem::A ? 1.0 : -1.0;
  const double d = params.p01 - params.p10;
  const double a = mode == AlphaMode::Free ? std::sqrt(params.p01 * params.p10) : std::abs(params.alpha);
  const double radius = std::hypot(d / 2.0, a);

  QubitOptimum out;
  out.value = s * d / 2.0 + radius;
  if (mode == AlphaMode::Free) {
    const double sum = params.p01 + params.p10;
    out.x_star = sum > 0.0 ? (target == Subsystem::A ? params.p01 : params.p10) / sum : 0.0;
    out.alpha_star = Complex(s * a, 0.0);
    out.phi_star = 0.0;
  } else {
    out.x_star = radius > 0.0 ? 0.5 * (1.0 + s * d / (2.0 * radius)) : 0.0;
    out.alpha_star = params.alpha;
    const double arg = a > 0.0 ? std::arg(params.alpha) : 0.0;
    out.phi_star = wrap_phase(target == Subsystem::A ? -arg : std::numbers::pi - arg);
  }
  out.x_star = std::clamp(out.x_star, 0.0, 1.0);
  out.r_star = std::sqrt(out.x_star);
  return out;
}

Curvatures second_order_check(const TwoQubitParams& params) {
  params.validate();
  if (!(params.p01 > 0.0 && params.p10 > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "curvature check needs p01 > 0 and p10 > 0");
  }
  const double d = params.p01 - params.p10;
  const double g = std::sqrt(params.p01 * params.p10);
  const double sum = params.p01 + params.p10;
  auto curvature = [&](double x, double sign) {
    const double w = x * (1.0 - x);
    const double first = d + sign * g * (1.0 - 2.0 * x) / std::sqrt(w);
    const double second = -sign * 0.5 * g / std::pow(w, 1.5);
    return 2.0 * first + 4.0 * x * second;
  };
  return {curvature(params.p01 / sum, 1.0), curvature(params.p10 / sum, -1.0)};
}

std::array<double, 4> BellDiagParams::lambdas() const {
  return {(1.0 + cx - cy + cz) / 4.0, (1.0 + cx + cy - cz) / 4.0, (1.0 - cx + cy + cz) / 4.0,
          (1.0 - cx - cy - cz) / 4.0};
}

bool BellDiagParams::physical(double tol) const {
  const auto l = lambdas();
  return std::all_of(l.begin(), l.end(), [tol](double x) { return x >= -tol; });
}

BipartiteState bell_state_from_c(const BellDiagParams& c) {
  if (!c.physical()) throw Error(ErrorKind::Unphysical, "correlation triple lies outside the tetrahedron");
  // (I + cx XX + cy YY + cz ZZ) / 4 in the |00>, |01>, |10>, |11> basis
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = (1.0 + c.cz) / 4.0;
  m(1, 1) = m(2, 2) = (1.0 - c.cz) / 4.0;
  m(0, 3) = m(3, 0) = (c.cx - c.cy) / 4.0;
  m(1, 2) = m(2, 1) = (c.cx + c.cy) / 4.0;
  return BipartiteState(std::move(m), 2, 2);
}

BellDiagParams bell_correlations(const BipartiteState& state) {
  require_two_qubit(state);
  const Matrix& m = state.matrix();
  // Tr(XX rho), Tr(YY rho), Tr(ZZ rho) written out on the computational basis.
  BellDiagParams c;
  c.cx = (m(0, 3) + m(3, 0) + m(1, 2) + m(2, 1)).real();
  c.cy = (-m(0, 3) - m(3, 0) + m(1, 2) + m(2, 1)).real();
  c.cz = (m(0, 0) - m(1, 1) - m(2, 2) + m(3, 3)).real();
  return c;
}

double concurrence_bell(const BellDiagParams& c) {
  if (std::abs(c.cx - c.cy) > kPhysicalSlack) {
    throw Error(ErrorKind::Unphysical, "closed-form concurrence requires c_x = c_y");
  }
  if (!c.physical()) throw Error(ErrorKind::Unphysical, "correlation triple lies outside the tetrahedron");
  return std::max(0.0, std::abs(c.cx) - (1.0 + c.cz) / 2.0);
}

double concurrence_wootters(const BipartiteState& state) {
  require_two_qubit(state);
  const Matrix yy = spin_flip();
  const Matrix root = psd_sqrt(state.matrix());
  const Matrix root_flipped = yy * root.conjugate() * yy;
  Eigen::JacobiSVD<Matrix> svd(root * root_flipped);
  const Eigen::VectorXd l = svd.singularValues();  // decreasing
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double bell_max_transfer(const BellDiagParams& c) { return std::abs(c.cx) / 2.0; }

double max_transfer_vs_concurrence(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "concurrence must lie in [0, 1]");
  }
  return (1.0 + concurrence) / 4.0;
}

TwoQubitParams max_coherence_params(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw Error(ErrorKind::OutOfRange, "p01 must lie in [0, 1/2]");
  return {0.5 - p, p, p, 0.5 - p, Complex(p, 0.0)};
}

std::vector<ScanRow> plane_scan(std::size_t resolution) {
  if (resolution < 2) throw Error(ErrorKind::OutOfRange, "resolution must be >= 2");
  const double steps = static_cast<double>(resolution - 1);
  std::vector<ScanRow> rows;
  rows.reserve(resolution * (resolution + 1) / 2);
  // Lattice point (a, b): c_z = 2a/(n-1) - 1, c_x = b/(n-1), 0 <= b <= n-1-a.
  for (std::size_t level = 0; level < resolution; ++level) {
    const std::size_t a = resolution - 1 - level;
    for (std::size_t b = 0; b + a <= resolution - 1; ++b) {
      ScanRow row;
      row.cx = row.cy = static_cast<double>(b) / steps;
      row.cz = 2.0 * static_cast<double>(a) / steps - 1.0;
      row.max_transfer = bell_max_transfer({row.cx, row.cy, row.cz});
      // (1 + c_z) / 2 = a / (n-1) on the lattice, so C is evaluated exactly
      row.concurrence = b > a ? static_cast<double>(b - a) / steps : 0.0;
      row.separable = b <= a;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<GridGradient> plane_gradients(std::size_t resolution) {
  if (resolution < 2) throw Error(ErrorKind::OutOfRange, "resolution must be >= 2");
  const double h = 1.0 / static_cast<double>(resolution - 1);
  auto point = [&](std::size_t a, std::size_t b) {
    BellDiagParams c;
    c.cx = c.cy = static_cast<double>(b) * h;
    c.cz = 2.0 * static_cast<double>(a) * h - 1.0;
    return c;
  };
  std::vector<GridGradient> out;
  for (std::size_t a = 0; a + 1 < resolution; ++a) {
    for (std::size_t b = 0; a + b + 1 <= resolution - 1; ++b) {
      const auto here = point(a, b);
      const auto along_x = point(a, b + 1);
      const auto along_z = point(a + 1, b);
      const double f = bell_max_transfer(here);
      GridGradient g;
      g.cx = here.cx;
      g.cz = here.cz;
      g.concurrence = b > a ? static_cast<double>(b - a) * h : 0.0;
      const double dfx = (bell_max_transfer(along_x) - f) / (along_x.cx - here.cx);
      g.gradient = {dfx, dfx, (bell_max_transfer(along_z) - f) / (along_z.cz - here.cz)};
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace sectransfer
