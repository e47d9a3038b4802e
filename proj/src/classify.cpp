#include "sectransfer/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sectransfer {

namespace {

std::vector<double> energy_values(const Hamiltonian& h) {
  std::vector<double> out(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) out[i] = h.energy_value(i);
  return out;
}

void check_distribution(std::span<const double> probs, const char* name) {
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(ErrorKind::NotAState, std::string(name) + " has a negative entry");
  }
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(sum - 1.0) > default_tolerances().trace) {
    throw Error(ErrorKind::NotAState, std::string(name) + " sums to " + std::to_string(sum) + ", not 1");
  }
}

}  // namespace

std::string_view to_string(FlowDirection d) {
  switch (d) {
    case FlowDirection::AFromB: return "A_from_B";
    case FlowDirection::BFromA: return "B_from_A";
    case FlowDirection::None: return "none";
  }
  return "none";
}

bool is_e_passive(std::span<const double> probs, std::span<const double> energies) {
  if (probs.size() != energies.size()) {
    throw Error(ErrorKind::LengthMismatch, "probabilities and energies differ in length");
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (std::size_t j = 0; j < probs.size(); ++j) {
      if (energies[i] < energies[j] && probs[i] < probs[j]) return false;
    }
  }
  return true;
}

FlowClassification classify_flow(const BipartiteState& state, const JointSpectrum& spec, Subsystem target,
                                 const Tolerances& tol) {
  const auto decomp = decompose(state, spec, tol);
  FlowClassification out;
  for (const auto& blk : spec.blocks()) {
    const auto& diag = decomp.diag_blocks.at(blk.energy);
    if (!is_e_passive(diag.probs, spec.e_local_energy_values(blk, target))) {
      out.failing_blocks.push_back(blk.energy);
    }
    if (const Matrix* alpha = decomp.coherence(blk.energy, blk.energy)) {
      if (alpha->cwiseAbs().maxCoeff() >= tol.coherence) out.has_useful_coherence = true;
    }
  }
  if (out.failing_blocks.empty() && !out.has_useful_coherence) {
    out.direction = target == Subsystem::A ? FlowDirection::AFromB : FlowDirection::BFromA;
  }
  return out;
}

std::optional<SecUnitary> passivity_witness(const BipartiteState& state, const JointSpectrum& spec,
                                            Subsystem target, const Rational& energy) {
  const auto& blk = spec.block(energy);
  const auto decomp = decompose(state, spec);
  const auto& probs = decomp.diag_blocks.at(energy).probs;
  const auto energies = spec.e_local_energy_values(blk, target);
  double worst = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  for (std::size_t i = 0; i < blk.dim(); ++i) {
    for (std::size_t j = 0; j < blk.dim(); ++j) {
      if (energies[i] < energies[j] && probs[i] < probs[j]) {
        const double gain = (probs[j] - probs[i]) * (energies[j] - energies[i]);
        if (gain > worst) {
          worst = gain;
          pair = {i, j};
        }
      }
    }
  }
  if (!pair) return std::nullopt;
  std::vector<std::size_t> perm(blk.dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[pair->first], perm[pair->second]);
  return permutation_unitary(spec, {{energy, perm}});
}

std::vector<double> gibbs_populations(const Hamiltonian& h, double beta) {
  if (!std::isfinite(beta)) throw Error(ErrorKind::OutOfRange, "inverse temperature must be finite");
  const auto e = energy_values(h);
  // largest Boltzmann weight normalized to 1
  const double ref = beta >= 0.0 ? *std::min_element(e.begin(), e.end()) : *std::max_element(e.begin(), e.end());
  std::vector<double> w(e.size());
  double z = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    w[i] = std::exp(-beta * (e[i] - ref));
    z += w[i];
  }
  for (auto& x : w) x /= z;
  return w;
}

BipartiteState thermal_product(const Hamiltonian& h_a, const Hamiltonian& h_b, double beta_a, double beta_b) {
  if (!std::isfinite(beta_a) || !std::isfinite(beta_b)) {
    throw Error(ErrorKind::OutOfRange, "inverse temperatures must be finite");
  }
  // Weight of |a, b> written as exp(-beta_B E) exp(-(beta_A - beta_B) e_a), with
  // E = e_a + e_b summed exactly, so equal-energy members compare exactly.
  std::vector<double> exponent;
  exponent.reserve(h_a.dim() * h_b.dim());
  for (std::size_t a = 0; a < h_a.dim(); ++a) {
    for (std::size_t b = 0; b < h_b.dim(); ++b) {
      const double total = to_double(h_a.energy(a) + h_b.energy(b));
      exponent.push_back(-beta_b * total - (beta_a - beta_b) * h_a.energy_value(a));
    }
  }
  const double top = *std::max_element(exponent.begin(), exponent.end());
  std::vector<double> joint(exponent.size());
  double z = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    joint[i] = std::exp(exponent[i] - top);
    z += joint[i];
  }
  for (auto& w : joint) w /= z;
  return BipartiteState::diagonal(joint, h_a.dim(), h_b.dim());
}

BipartiteState passive_max_active_product(std::span<const double> probs_a, std::span<const double> probs_b,
                                          const Hamiltonian& h_a, const Hamiltonian& h_b) {
  if (probs_a.size() != h_a.dim() || probs_b.size() != h_b.dim()) {
    throw Error(ErrorKind::LengthMismatch, "population lists must match the local dimensions");
  }
  check_distribution(probs_a, "probs_a");
  check_distribution(probs_b, "probs_b");
  const auto ea = energy_values(h_a);
  auto eb = energy_values(h_b);
  if (!is_e_passive(probs_a, ea)) {
    throw Error(ErrorKind::NotPassive, "probs_a must be non-increasing with energy");
  }
  for (auto& x : eb) x = -x;
  if (!is_e_passive(probs_b, eb)) {
    throw Error(ErrorKind::NotMaxActive, "probs_b must be non-decreasing with energy");
  }
  std::vector<double> joint;
  joint.reserve(probs_a.size() * probs_b.size());
  for (double x : probs_a)
    for (double y : probs_b) joint.push_back(x * y);
  return BipartiteState::diagonal(joint, h_a.dim(), h_b.dim());
}

}  // namespace sectransfer
