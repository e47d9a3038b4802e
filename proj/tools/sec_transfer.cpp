// sec-transfer: batch front-end for the sectransfer library.

#include "sectransfer/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace sectransfer;
  CLI::App app{"Energy transfer under strong-energy-conserving unitaries"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string target = "A";
  std::vector<std::string> tolerances;

  const std::pair<const char*, const char*> commands[] = {
      {"decompose", "split a state into energy blocks and coherences"},
      {"analyze", "diagonal/coherent transfer for a given or sampled SEC unitary"},
      {"optimize", "maximal transfer into the target"},
      {"classify", "unidirectional flow membership"},
      {"qubit-max", "two-qubit closed-form optimum"},
      {"bell-scan", "Bell-diagonal plane scan (CSV)"},
      {"verify", "property suite on built-in fixtures"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "problem bundle JSON");
    sub->add_option("--output", cfg.output, "report path (default stdout)");
    sub->add_option("--target", target, "receiving subsystem")->check(CLI::IsMember({"A", "B"}));
    sub->add_option("--seed", cfg.seed, "RNG seed (required when sampling)");
    sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
    sub->add_option("--resolution", cfg.resolution, "bell-scan grid points per edge");
    sub->add_option("--beta-a", cfg.beta_a, "inverse temperature of A");
    sub->add_option("--beta-b", cfg.beta_b, "inverse temperature of B");
    sub->add_option("--probs-a", cfg.probs_a, "passive populations of A")->delimiter(',');
    sub->add_option("--probs-b", cfg.probs_b, "maximally active populations of B")->delimiter(',');
    sub->add_option("--tolerance", tolerances, "override a tolerance, KEY=VAL");
    sub->add_option("--fixture", cfg.fixture, "built-in state")
        ->check(CLI::IsMember({"max-coherence", "thermal", "bell", "passive-max-active"}));
    sub->add_option("--method", cfg.method, "optimize: exact | permutation | monte-carlo")
        ->check(CLI::IsMember({"exact", "permutation", "monte-carlo"}));
    sub->add_option("--csv", cfg.csv, "decompose: CSV summary path");
    sub->add_option("--alpha-mode", cfg.alpha_mode, "qubit-max: free | fixed")
        ->check(CLI::IsMember({"free", "fixed"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  cfg.command = *cli::parse_command(app.get_subcommands().front()->get_name());
  try {
    cfg.target = parse_subsystem(target);
    for (const auto& t : tolerances) cli::apply_tolerance(cfg.tolerances, t);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitValidation;
  }
  return cli::run(cfg, std::cout, std::cerr);
}
