#pragma once

#include "sectransfer/common.hpp"
#include "sectransfer/spectra.hpp"
#include "sectransfer/states.hpp"
#include "sectransfer/unitaries.hpp"

#include <array>
#include <vector>

namespace sectransfer {

/// Two qubits with H = |1><1| each (hbar*omega = 1).
JointSpectrum two_qubit_spectrum();

/// Populations p_ij = <ij|rho|ij> and the single useful coherence
/// alpha = <01|rho|10>.
struct TwoQubitParams {
  double p00 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;
  Complex alpha{0.0, 0.0};

  /// Throws Unphysical unless populations are a distribution and
  /// |alpha|^2 <= p01 p10.
  void validate() const;
  /// rho_Diag + chi(1, 1).
  BipartiteState to_state() const;
  /// Reads populations and <01|rho|10>; other coherences are ignored.
  static TwoQubitParams from_state(const BipartiteState& state);
};

/// SEC unitary on two resonant qubits. `phi` is the effective phase
/// theta01 - theta10 + varphi; the thetas only enter as phases that cancel
/// from every transfer value.
struct SecParams2Q {
  double r = 0.0;
  double phi = 0.0;
  double theta00 = 0.0;
  double theta01 = 0.0;
  double theta10 = 0.0;
  double theta11 = 0.0;
};

SecUnitary sec_unitary_2q(const SecParams2Q& params);

/// (p01 - p10) r^2
double delta_diag_2q(const TwoQubitParams& params, double r);
/// 2 Re(alpha e^{i phi}) r sqrt(1 - r^2)
double delta_coh_2q(const TwoQubitParams& params, double r, double phi);

/// Delta<H_A>_{+/-}(r) = (p01 - p10) r^2 +/- 2 r sqrt(p01 p10 (1 - r^2)).
double delta_pm_2q(const TwoQubitParams& params, double r, int sign);

enum class AlphaMode { Fixed, Free };

struct QubitOptimum {
  double value = 0.0;
  double r_star = 0.0;
  double phi_star = 0.0;
  Complex alpha_star{0.0, 0.0};
  double x_star = 0.0;  // r_star^2
};

/// Fixed: maximize over (r, phi) at the given alpha.
/// Free: also maximize over |alpha| <= sqrt(p01 p10); the optimum is p01 for
/// target A (r^2 = p01 / (p01 + p10)) and p10 for target B (r^2 = p10 / (p01 + p10)).
QubitOptimum max_transfer_2q(const TwoQubitParams& params, Subsystem target, AlphaMode mode = AlphaMode::Free);

struct Curvatures {
  double plus = 0.0;   // d^2 Delta_+ / dr^2 at x_+
  double minus = 0.0;  // d^2 Delta_- / dr^2 at x_-
};

/// Requires p01 > 0 and p10 > 0 (OutOfRange otherwise).
Curvatures second_order_check(const TwoQubitParams& params);

/// Bell-diagonal state (I + sum_i c_i sigma_i (x) sigma_i) / 4.
struct BellDiagParams {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;

  /// Bell-basis weights lambda_ab in the order 00, 01, 10, 11, where
  /// |psi_ab> = (|0 b> + (-1)^a |1, 1 xor b>) / sqrt(2).
  std::array<double, 4> lambdas() const;
  bool physical(double tol = 1e-12) const;
};

/// Throws Unphysical outside the tetrahedron.
BipartiteState bell_state_from_c(const BellDiagParams& c);
/// c_i = Tr(sigma_i (x) sigma_i rho); throws NotTwoQubit.
BellDiagParams bell_correlations(const BipartiteState& state);

/// Closed form on the c_x = c_y plane: max(0, |c_x| - (1 + c_z) / 2).
/// Throws Unphysical off the plane or outside the tetrahedron.
double concurrence_bell(const BellDiagParams& c);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) with l_i the decreasing
/// eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)), rho~ = (Y x Y) rho* (Y x Y).
/// The l_i are computed as singular values of sqrt(rho) sqrt(rho~).
double concurrence_wootters(const BipartiteState& state);

/// Maximum transfer on the c_x = c_y plane: |c_x| / 2.
double bell_max_transfer(const BellDiagParams& c);

/// (1 + C) / 4; only meaningful along the maximum-coherence line.
double max_transfer_vs_concurrence(double concurrence);

/// Maximum-coherence Bell-diagonal state with p01 = p10 = alpha = p,
/// p00 = p11 = 1/2 - p. Requires p in [0, 1/2].
TwoQubitParams max_coherence_params(double p);

struct ScanRow {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
  double max_transfer = 0.0;
  double concurrence = 0.0;
  bool separable = true;
};

/// Triangular lattice over the c_x >= 0 half of the physical c_x = c_y plane,
/// vertices (0,0,1), (1,1,-1), (0,0,-1). With n = resolution there are n
/// levels c_z = 1, ..., -1 (apex first) and n(n+1)/2 rows in total.
std::vector<ScanRow> plane_scan(std::size_t resolution);

struct GridGradient {
  double cx = 0.0;
  double cz = 0.0;
  double concurrence = 0.0;
  /// Forward difference quotients of max_transfer with respect to c_x, c_y
  /// and c_z along the lattice lines (c_x and c_y move together).
  std::array<double, 3> gradient{};
};

/// One entry per lattice cell that has both forward neighbours.
std::vector<GridGradient> plane_gradients(std::size_t resolution);

}  // namespace sectransfer
