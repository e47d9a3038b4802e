#include "sectransfer/cli.hpp"

#include "sectransfer/classify.hpp"
#include "sectransfer/io.hpp"
#include "sectransfer/optimize.hpp"
#include "sectransfer/qubits.hpp"
#include "sectransfer/transfer.hpp"
#include "sectransfer/verify.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sectransfer::cli {

namespace {

using io::Json;

/// Raised when a computed result violates a numerical invariant (exit 3).
class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  JointSpectrum spec;
  std::optional<BipartiteState> state;
  std::optional<SecUnitary> unitary;
};

Problem qubit_problem(BipartiteState state) { return {two_qubit_spectrum(), std::move(state), std::nullopt}; }

Problem fixture_problem(const std::string& name) {
  if (name == "max-coherence") {
    return qubit_problem(TwoQubitParams{0.3, 0.3, 0.1, 0.3, Complex(std::sqrt(0.03), 0.0)}.to_state());
  }
  if (name == "thermal") {
    return qubit_problem(thermal_product(Hamiltonian::ladder(2), Hamiltonian::ladder(2), 2.0, 1.0));
  }
  if (name == "bell") {
    Vector psi = Vector::Zero(4);
    psi(1) = psi(2) = 1.0;
    return qubit_problem(BipartiteState::pure(psi, 2, 2));
  }
  if (name == "passive-max-active") {
    const std::vector<double> pa{0.8, 0.2};
    const std::vector<double> pb{0.3, 0.7};
    return qubit_problem(
        passive_max_active_product(pa, pb, Hamiltonian::ladder(2), Hamiltonian::ladder(2)));
  }
  throw Error(ErrorKind::Parse, "unknown fixture '" + name + "'");
}

Problem load_problem(const RunConfig& cfg) {
  if (cfg.input) {
    const Json j = io::read_json_file(*cfg.input);
    std::optional<BipartiteState> state;
    if (j.contains("state")) state = io::state_from_json(j["state"], cfg.tolerances);
    const std::size_t da = state ? state->dim_a() : 2;
    const std::size_t db = state ? state->dim_b() : 2;
    Hamiltonian h_a = j.contains("h_a") ? io::hamiltonian_from_json(j["h_a"]) : Hamiltonian::ladder(da);
    Hamiltonian h_b = j.contains("h_b") ? io::hamiltonian_from_json(j["h_b"]) : Hamiltonian::ladder(db);
    Problem p{JointSpectrum(std::move(h_a), std::move(h_b)), std::move(state), std::nullopt};
    if (j.contains("unitary")) p.unitary = io::unitary_from_json(j["unitary"]);
    if (!p.state && cfg.beta_a && cfg.beta_b) {
      p.state = thermal_product(p.spec.hamiltonian(Subsystem::A), p.spec.hamiltonian(Subsystem::B), *cfg.beta_a,
                                *cfg.beta_b);
    }
    if (p.state && (p.state->dim_a() != p.spec.dim_a() || p.state->dim_b() != p.spec.dim_b())) {
      throw Error(ErrorKind::DimensionMismatch, "state dims do not match the Hamiltonians in the bundle");
    }
    return p;
  }
  if (cfg.fixture) return fixture_problem(*cfg.fixture);
  if (cfg.beta_a || cfg.beta_b) {
    if (!cfg.beta_a || !cfg.beta_b) throw Error(ErrorKind::Parse, "--beta-a and --beta-b must be given together");
    return qubit_problem(thermal_product(Hamiltonian::ladder(2), Hamiltonian::ladder(2), *cfg.beta_a, *cfg.beta_b));
  }
  if (!cfg.probs_a.empty() || !cfg.probs_b.empty()) {
    const auto h_a = Hamiltonian::ladder(cfg.probs_a.size());
    const auto h_b = Hamiltonian::ladder(cfg.probs_b.size());
    auto state = passive_max_active_product(cfg.probs_a, cfg.probs_b, h_a, h_b);
    return {JointSpectrum(h_a, h_b), std::move(state), std::nullopt};
  }
  throw Error(ErrorKind::Parse, "no input: give --input, --fixture, --beta-a/--beta-b or --probs-a/--probs-b");
}

const BipartiteState& require_state(const Problem& p) {
  if (!p.state) throw Error(ErrorKind::Parse, "this command needs a state");
  return *p.state;
}

std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw Error(ErrorKind::Parse, "--seed is required for sampling commands");
  return *cfg.seed;
}

void check_close(const char* invariant, double a, double b, double tol) {
  const double diff = std::abs(a - b);
  if (!(diff <= tol)) {
    std::ostringstream os;
    os << invariant << " violated: |" << io::format_double(a) << " - " << io::format_double(b)
       << "| = " << io::format_double(diff) << " > tolerance " << io::format_double(tol);
    throw InvariantFailure(os.str());
  }
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::Parse, "cannot write '" + *cfg.output + "'");
    file << text;
  } else {
    out << text;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int run_decompose(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_problem(cfg);
  const auto decomp = decompose(require_state(p), p.spec, cfg.tolerances);
  const Matrix diff = decomp.reassemble(p.spec) - p.state->matrix();
  check_close("lossless decomposition", diff.cwiseAbs().maxCoeff(), 0.0, 1e-14);
  if (cfg.csv) {
    std::ofstream file(*cfg.csv, std::ios::binary);
    if (!file) throw Error(ErrorKind::Parse, "cannot write '" + *cfg.csv + "'");
    io::write_decomposition_csv(file, decomp);
  }
  emit(cfg, out, dump(io::to_json(decomp)));
  return kExitOk;
}

int run_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_problem(cfg);
  const auto& state = require_state(p);
  const SecUnitary u = p.unitary ? *p.unitary : sample_haar(p.spec, require_seed(cfg));
  const auto report = analyze(state, u, p.spec, cfg.target);
  check_close("total = diagonal + coherent", report.total, report.diagonal + report.coherent, cfg.tolerances.split);
  double eta_sum = 0.0;
  for (const auto& [k, eta] : report.eta) eta_sum += eta * p.spec.hamiltonian(cfg.target).energy_value(k);
  check_close("coherent = sum_k eta_k eps_k", report.coherent, eta_sum, cfg.tolerances.split);
  Json j = io::to_json(report);
  if (!p.unitary) j["seed"] = *cfg.seed;
  emit(cfg, out, dump(j));
  return kExitOk;
}

int run_optimize(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_problem(cfg);
  const auto& state = require_state(p);
  OptimizationResult result;
  if (cfg.method == "exact") {
    result = maximize_transfer_exact(state, p.spec, cfg.target);
  } else if (cfg.method == "permutation") {
    const auto decomp = decompose(state, p.spec, cfg.tolerances);
    result.unitary = build_theorem3_unitary(decomp, p.spec, cfg.target);
    result.value = transfer_diagonal(decomp, result.unitary, p.spec, cfg.target).value;
    result.method = OptimizationMethod::DiagonalExact;
  } else if (cfg.method == "monte-carlo") {
    const auto seed = require_seed(cfg);
    if (!cfg.samples || *cfg.samples == 0) throw Error(ErrorKind::Parse, "--samples >= 1 is required for monte-carlo");
    result = monte_carlo_max(state, p.spec, cfg.target, *cfg.samples, seed);
  } else {
    throw Error(ErrorKind::Parse, "unknown method '" + cfg.method + "'");
  }
  check_close("optimizer value reproduced by direct evolution", result.value,
              transfer_direct(state, result.unitary, p.spec, cfg.target), cfg.tolerances.reevaluation);
  Json j = io::to_json(result);
  j["target"] = std::string(to_string(cfg.target));
  if (cfg.seed && cfg.method == "monte-carlo") j["seed"] = *cfg.seed;
  emit(cfg, out, dump(j));
  return kExitOk;
}

int run_classify(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_problem(cfg);
  const auto c = classify_flow(require_state(p), p.spec, cfg.target, cfg.tolerances);
  Json j = io::to_json(c);
  j["target"] = std::string(to_string(cfg.target));
  if (cfg.beta_a && cfg.beta_b) j["negative_temperature"] = is_negative_temperature(*cfg.beta_a, *cfg.beta_b);
  emit(cfg, out, dump(j));
  return kExitOk;
}

int run_qubit_max(const RunConfig& cfg, std::ostream& out) {
  const auto p = load_problem(cfg);
  const auto params = TwoQubitParams::from_state(require_state(p));
  AlphaMode mode;
  if (cfg.alpha_mode == "free") {
    mode = AlphaMode::Free;
  } else if (cfg.alpha_mode == "fixed") {
    mode = AlphaMode::Fixed;
  } else {
    throw Error(ErrorKind::Parse, "alpha mode must be free or fixed");
  }
  const auto opt = max_transfer_2q(params, cfg.target, mode);
  if (mode == AlphaMode::Fixed) {
    // closed form must agree with the block eigen optimizer on the same state
    const double exact = maximize_transfer_exact(params.to_state(), two_qubit_spectrum(), cfg.target).value;
    check_close("two-qubit closed form vs exact optimizer", opt.value, exact, cfg.tolerances.reevaluation);
  }
  Json j = io::to_json(opt);
  j["target"] = std::string(to_string(cfg.target));
  j["alpha_mode"] = cfg.alpha_mode;
  j["params"] = {{"p00", params.p00},
                 {"p01", params.p01},
                 {"p10", params.p10},
                 {"p11", params.p11},
                 {"alpha", {{"re", params.alpha.real()}, {"im", params.alpha.imag()}}}};
  emit(cfg, out, dump(j));
  return kExitOk;
}

int run_bell_scan(const RunConfig& cfg, std::ostream& out) {
  const auto rows = plane_scan(cfg.resolution.value_or(201));
  std::ostringstream os;
  io::write_scan_csv(os, rows);
  emit(cfg, out, os.str());
  return kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_property_suite(require_seed(cfg));
  std::ostringstream os;
  print_check_table(os, results);
  emit(cfg, out, os.str());
  for (const auto& r : results) {
    if (!r.passed) return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "decompose") return Command::Decompose;
  if (name == "analyze") return Command::Analyze;
  if (name == "optimize") return Command::Optimize;
  if (name == "classify") return Command::Classify;
  if (name == "qubit-max") return Command::QubitMax;
  if (name == "bell-scan") return Command::BellScan;
  if (name == "verify") return Command::Verify;
  return std::nullopt;
}

void apply_tolerance(Tolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::Parse, "tolerance must be KEY=VAL, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "tolerance value for '" + key + "' is not a number");
  }
  if (!(value >= 0.0)) throw Error(ErrorKind::Parse, "tolerance '" + key + "' must be nonnegative");
  if (key == "hermitian") tol.hermitian = value;
  else if (key == "trace") tol.trace = value;
  else if (key == "psd") tol.psd = value;
  else if (key == "unitary") tol.unitary = value;
  else if (key == "coherence") tol.coherence = value;
  else if (key == "storage_zero") tol.storage_zero = value;
  else if (key == "bound") tol.bound = value;
  else if (key == "split") tol.split = value;
  else if (key == "reevaluation") tol.reevaluation = value;
  else throw Error(ErrorKind::Parse, "unknown tolerance key '" + key + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Decompose: return run_decompose(config, out);
      case Command::Analyze: return run_analyze(config, out);
      case Command::Optimize: return run_optimize(config, out);
      case Command::Classify: return run_classify(config, out);
      case Command::QubitMax: return run_qubit_max(config, out);
      case Command::BellScan: return run_bell_scan(config, out);
      case Command::Verify: return run_verify(config, out);
    }
  } catch (const InvariantFailure& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace sectransfer::cli
