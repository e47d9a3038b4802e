#pragma once

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sectransfer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Exact energy value in units of hbar*omega.
using Rational = boost::rational<std::int64_t>;

enum class Subsystem { A, B };

inline Subsystem other(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }
inline std::string_view to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }
Subsystem parse_subsystem(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

enum class ErrorKind {
  DegenerateSpectrum,
  InvalidHamiltonian,
  AmbiguousEnergy,
  UnknownBlock,
  DimensionMismatch,
  NotAState,
  ZeroBlock,
  BlockMismatch,
  NotUnitary,
  LengthMismatch,
  NotPassive,
  NotMaxActive,
  Unphysical,
  NotTwoQubit,
  OutOfRange,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` names the
/// violated contract so callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical slack used by validators. Defaults admit states produced by
/// double-precision evolution.
struct Tolerances {
  double hermitian = 1e-12;  // max |rho - rho^dagger|
  double trace = 1e-12;      // |Tr rho - 1|
  double psd = 1e-10;        // smallest eigenvalue >= -psd
  double unitary = 1e-12;    // max |U^dagger U - I|
  double coherence = 1e-14;  // |alpha| below this counts as zero
  double storage_zero = 1e-15;
  double bound = 1e-12;      // slack for the coherence bound check
  double split = 1e-12;      // |total - diagonal - coherent|
  double reevaluation = 1e-10;  // optimizer value vs direct re-evaluation
};

const Tolerances& default_tolerances();

}  // namespace sectransfer
