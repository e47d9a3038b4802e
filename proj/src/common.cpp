#include "sectransfer/common.hpp"

#include <charconv>

namespace sectransfer {

Subsystem parse_subsystem(std::string_view text) {
  if (text == "A" || text == "a") return Subsystem::A;
  if (text == "B" || text == "b") return Subsystem::B;
  throw Error(ErrorKind::Parse, "subsystem must be A or B, got '" + std::string(text) + "'");
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(ErrorKind::Parse, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::InvalidHamiltonian: return "InvalidHamiltonian";
    case ErrorKind::AmbiguousEnergy: return "AmbiguousEnergy";
    case ErrorKind::UnknownBlock: return "UnknownBlock";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::ZeroBlock: return "ZeroBlock";
    case ErrorKind::BlockMismatch: return "BlockMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotPassive: return "NotPassive";
    case ErrorKind::NotMaxActive: return "NotMaxActive";
    case ErrorKind::Unphysical: return "Unphysical";
    case ErrorKind::NotTwoQubit: return "NotTwoQubit";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

const Tolerances& default_tolerances() {
  static const Tolerances tolerances{};
  return tolerances;
}

}  // namespace sectransfer
