#include "sectransfer/verify.hpp"

#include "sectransfer/classify.hpp"
#include "sectransfer/io.hpp"
#include "sectransfer/optimize.hpp"
#include "sectransfer/qubits.hpp"
#include "sectransfer/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace sectransfer {

namespace {

struct Fixture {
  JointSpectrum spec;
  std::vector<BipartiteState> states;
};

std::vector<Fixture> random_fixtures(std::uint64_t seed, std::size_t per_class) {
  std::vector<Fixture> out;
  const std::pair<std::size_t, std::size_t> dims[] = {{2, 2}, {3, 2}, {3, 3}};
  for (const auto& [da, db] : dims) {
    Fixture f{JointSpectrum(Hamiltonian::ladder(da), Hamiltonian::ladder(db)), {}};
    for (std::size_t k = 0; k < per_class; ++k) f.states.push_back(random_state(da, db, derive_stream(seed, {da, db, k})));
    out.push_back(std::move(f));
  }
  return out;
}

CheckResult make(std::string name, double worst, double tol, std::string detail = {}) {
  return {std::move(name), worst, tol, worst <= tol, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  constexpr std::size_t kStates = 10;
  constexpr std::size_t kUnitaries = 10;
  const auto fixtures = random_fixtures(seed, kStates);
  std::vector<CheckResult> results;

  double split = 0.0, conservation = 0.0, diag_formula = 0.0, locality = 0.0, gate = 0.0;
  double perm_coh = 0.0, perm_dom = 0.0, bound = 0.0, reeval = 0.0;
  for (const auto& f : fixtures) {
    for (std::size_t s = 0; s < f.states.size(); ++s) {
      const auto& state = f.states[s];
      const auto decomp = decompose(state, f.spec);
      const Matrix diag_only = decomp.diagonal_matrix(f.spec);
      const Matrix local_only = decomp.without_cross_block_coherence().reassemble(f.spec);
      const auto t3 = build_theorem3_unitary(decomp, f.spec, Subsystem::A);
      const double t3_diag = transfer_diagonal(decomp, t3, f.spec, Subsystem::A).value;
      perm_coh = std::max(perm_coh, std::abs(transfer_coherent(decomp, t3, f.spec, Subsystem::A).value));
      for (std::size_t k = 0; k < kUnitaries; ++k) {
        const auto u = sample_haar(f.spec, derive_stream(seed, {0xabc, s, k, f.spec.total_dim()}));
        const auto report = analyze(state, u, f.spec, Subsystem::A);
        split = std::max(split, std::abs(report.total - report.diagonal - report.coherent));
        conservation = std::max(
            conservation, std::abs(report.total + transfer_direct(state, u, f.spec, Subsystem::B)));
        diag_formula = std::max(
            diag_formula, std::abs(report.diagonal - transfer_direct(diag_only, u, f.spec, Subsystem::A)));
        locality = std::max(locality, std::abs(report.total - transfer_direct(local_only, u, f.spec, Subsystem::A)));
        perm_dom = std::max(perm_dom, report.diagonal - t3_diag);
      }
      gate = std::max(gate, std::abs(transfer_direct(state, t3, f.spec, Subsystem::A) - t3_diag));
      const auto b = check_coherence_bound(state, f.spec, Subsystem::A);
      bound = std::max(bound, b.rhs - b.lhs);
      const auto opt = maximize_transfer_exact(state, f.spec, Subsystem::A);
      reeval = std::max(reeval, std::abs(opt.value - transfer_direct(state, opt.unitary, f.spec, Subsystem::A)));
    }
  }
  results.push_back(make("split total = diagonal + coherent", split, 1e-12));
  results.push_back(make("energy conservation dA + dB = 0", conservation, 1e-12));
  results.push_back(make("block-wise diagonal transfer", diag_formula, 1e-12));
  results.push_back(make("only (E,E) coherence contributes", locality, 1e-13));
  results.push_back(make("permutation optimizer has no coherent part", perm_coh, 1e-12));
  results.push_back(make("permutation optimizer total = diagonal", gate, 1e-12));
  results.push_back(make("permutation optimizer dominates Haar samples", std::max(0.0, perm_dom), 1e-12));
  results.push_back(make("coherence bound max(rho) >= max(rho_Diag)", std::max(0.0, bound), 1e-12));
  results.push_back(make("exact optimizer value reproducible", reeval, 1e-10));

  // Unidirectional flow for thermal products with beta_A > beta_B.
  double flow = 0.0;
  std::size_t members = 0;
  for (std::size_t da : {2u, 3u}) {
    const JointSpectrum spec(Hamiltonian::ladder(da), Hamiltonian::ladder(3));
    for (double beta_b : {0.2, 0.7}) {
      const auto state = thermal_product(spec.hamiltonian(Subsystem::A), spec.hamiltonian(Subsystem::B), 1.5, beta_b);
      if (classify_flow(state, spec, Subsystem::A).direction == FlowDirection::AFromB) ++members;
      for (std::size_t k = 0; k < 50; ++k) {
        const auto u = sample_haar(spec, derive_stream(seed, {0xf10e, da, k}));
        flow = std::max(flow, -transfer_direct(state, u, spec, Subsystem::A));
      }
    }
  }
  results.push_back(make("thermal products classified A_from_B", static_cast<double>(4 - members), 0.0));
  results.push_back(make("unidirectional flow dA >= 0", std::max(0.0, flow), 1e-12));

  // Two-qubit closed forms.
  TwoQubitParams fixture{0.3, 0.3, 0.1, 0.3, Complex(std::sqrt(0.03), 0.0)};
  const auto spec2 = two_qubit_spectrum();
  const double exact = maximize_transfer_exact(fixture.to_state(), spec2, Subsystem::A).value;
  results.push_back(make("two-qubit optimum equals p01", std::abs(exact - 0.3), 1e-10));
  double line = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double c = 0.1 * k;
    const auto params = max_coherence_params((1.0 + c) / 4.0);
    const double best = maximize_transfer_exact(params.to_state(), spec2, Subsystem::A).value;
    line = std::max(line, std::abs(best - max_transfer_vs_concurrence(c)));
  }
  results.push_back(make("max transfer = (1 + C) / 4 on the max-coherence line", line, 1e-12));
  return results;
}

void print_check_table(std::ostream& os, const std::vector<CheckResult>& results) {
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  os << std::left << std::setw(static_cast<int>(width)) << "check" << "  result  worst                    tolerance\n";
  for (const auto& r : results) {
    os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << (r.passed ? "PASS  " : "FAIL  ") << "  "
       << std::setw(23) << io::format_double(r.worst) << "  " << io::format_double(r.tolerance);
    if (!r.detail.empty()) os << "  " << r.detail;
    os << '\n';
  }
}

}  // namespace sectransfer
