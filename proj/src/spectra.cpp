#include "sectransfer/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace sectransfer {

namespace {

constexpr std::int64_t kMaxSnapDenominator = 1'000'000;

// Continued-fraction convergents of x until one lies within tol.
std::optional<Rational> snap_to_rational(double x, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double sign = x < 0 ? -1.0 : 1.0;
  double rest = std::abs(x);
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(rest));
  std::int64_t k_prev = 0, k = 1;
  double frac = rest - std::floor(rest);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - std::abs(x)) <= tol) {
      return Rational(static_cast<std::int64_t>(sign) * h, k);
    }
    if (frac == 0.0) break;
    rest = 1.0 / frac;
    const double a_real = std::floor(rest);
    frac = rest - a_real;
    if (a_real > static_cast<double>(kMaxSnapDenominator)) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > kMaxSnapDenominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

}  // namespace

Hamiltonian::Hamiltonian(std::vector<Rational> energies, std::vector<std::string> labels)
    : energies_(std::move(energies)), labels_(std::move(labels)) {
  if (energies_.size() < 2) {
    throw Error(ErrorKind::InvalidHamiltonian, "a local Hamiltonian needs at least 2 levels");
  }
  if (!labels_.empty() && labels_.size() != energies_.size()) {
    throw Error(ErrorKind::InvalidHamiltonian, "label count does not match level count");
  }
  auto sorted = energies_;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
    throw Error(ErrorKind::DegenerateSpectrum, "energy " + to_string(*it) + " is repeated");
  }
}

Hamiltonian Hamiltonian::from_doubles(std::span<const double> energies, double rel_tol) {
  std::vector<Rational> snapped;
  snapped.reserve(energies.size());
  for (double e : energies) {
    const double tol = rel_tol * std::max(std::abs(e), 1.0);
    auto r = snap_to_rational(e, tol);
    if (!r) {
      throw Error(ErrorKind::AmbiguousEnergy,
                  "no rational within relative tolerance of " + std::to_string(e));
    }
    snapped.push_back(*r);
  }
  for (std::size_t i = 0; i < energies.size(); ++i) {
    for (std::size_t j = i + 1; j < energies.size(); ++j) {
      const double scale = std::max({std::abs(energies[i]), std::abs(energies[j]), 1.0});
      if (energies[i] != energies[j] && std::abs(energies[i] - energies[j]) <= rel_tol * scale) {
        throw Error(ErrorKind::AmbiguousEnergy, "levels " + std::to_string(i) + " and " +
                                                    std::to_string(j) +
                                                    " are equal within tolerance but not exactly");
      }
    }
  }
  return Hamiltonian(std::move(snapped));
}

Hamiltonian Hamiltonian::ladder(std::size_t dim) {
  std::vector<Rational> energies(dim);
  for (std::size_t i = 0; i < dim; ++i) energies[i] = Rational(static_cast<std::int64_t>(i));
  return Hamiltonian(std::move(energies));
}

JointSpectrum::JointSpectrum(Hamiltonian h_a, Hamiltonian h_b)
    : h_a_(std::move(h_a)), h_b_(std::move(h_b)) {
  std::map<Rational, std::vector<BlockMember>> grouped;
  for (std::size_t a = 0; a < h_a_.dim(); ++a) {
    for (std::size_t b = 0; b < h_b_.dim(); ++b) {
      grouped[h_a_.energy(a) + h_b_.energy(b)].push_back({a, b});
    }
  }
  positions_.resize(total_dim());
  blocks_.reserve(grouped.size());
  for (auto& [energy, members] : grouped) {
    std::sort(members.begin(), members.end(), [this](const BlockMember& x, const BlockMember& y) {
      return h_a_.energy(x.a) < h_a_.energy(y.a);
    });
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      positions_[flat_index(members[pos])] = {blocks_.size(), pos};
    }
    blocks_.push_back({energy, std::move(members)});
  }
}

std::optional<std::size_t> JointSpectrum::find_block(const Rational& energy) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), energy,
                             [](const EnergyBlock& blk, const Rational& e) { return blk.energy < e; });
  if (it == blocks_.end() || it->energy != energy) return std::nullopt;
  return static_cast<std::size_t>(it - blocks_.begin());
}

const EnergyBlock& JointSpectrum::block(const Rational& energy) const {
  auto idx = find_block(energy);
  if (!idx) throw Error(ErrorKind::UnknownBlock, "no energy block with E = " + to_string(energy));
  return blocks_[*idx];
}

std::vector<Rational> JointSpectrum::e_local_energies(const Rational& energy, Subsystem s) const {
  const auto& blk = block(energy);
  const auto& h = hamiltonian(s);
  std::vector<Rational> out;
  out.reserve(blk.dim());
  for (std::size_t pos = 0; pos < blk.dim(); ++pos) out.push_back(h.energy(blk.local_index(pos, s)));
  return out;
}

std::vector<double> JointSpectrum::e_local_energy_values(const EnergyBlock& blk, Subsystem s) const {
  const auto& h = hamiltonian(s);
  std::vector<double> out;
  out.reserve(blk.dim());
  for (std::size_t pos = 0; pos < blk.dim(); ++pos) out.push_back(h.energy_value(blk.local_index(pos, s)));
  return out;
}

Eigen::VectorXd JointSpectrum::local_energy_diagonal(Subsystem s) const {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(total_dim()));
  for (std::size_t a = 0; a < dim_a(); ++a) {
    for (std::size_t b = 0; b < dim_b(); ++b) {
      diag(static_cast<Eigen::Index>(flat_index(a, b))) =
          s == Subsystem::A ? h_a_.energy_value(a) : h_b_.energy_value(b);
    }
  }
  return diag;
}

JointSpectrum build_joint_spectrum(const Hamiltonian& h_a, const Hamiltonian& h_b) {
  return JointSpectrum(h_a, h_b);
}

}  // namespace sectransfer
