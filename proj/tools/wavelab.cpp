#include "wavelab/io/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace wavelab::io;

  CLI::App app{"wavelab: unidirectional shallow-water equation laboratory"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = "out";
  std::optional<unsigned> threads;

  auto* run = app.add_subcommand("run", "integrate one configuration and analyse breaking");
  run->add_option("--config", config, "JSON configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output root directory");

  CheckCoeffsArgs cc;
  auto* check = app.add_subcommand("check-coeffs", "print coefficients and classification of a family member");
  check->add_option("family", cc.family, "one-param | two-param | surface")->required();
  check->add_option("-p", cc.p, "velocity family parameter (rational, e.g. -1/12)");
  check->add_option("-q", cc.q, "surface family parameter");
  check->add_option("--theta2", cc.theta2, "theta squared for the two-param family")->capture_default_str();
  check->add_option("--kappa-hat", cc.kappa_hat, "constant of the standard form")->capture_default_str();
  check->add_option("--mu", cc.mu, "mu used for the standard-form constants")->capture_default_str();
  check->add_option("--eps", cc.eps, "eps used for the standard-form constants (default sqrt(mu))");
  check->add_flag("--json", cc.json, "print JSON instead of a table");

  bool self_test = false;
  auto* residual = app.add_subcommand("residual-study", "fit the order of the Green-Naghdi residuals in mu");
  residual->add_option("--config", config, "JSON configuration")->required()->check(CLI::ExistingFile);
  residual->add_option("--out", out_dir, "output root directory");
  residual->add_flag("--self-test", self_test, "fit a synthetic c mu^2 series instead of running the solver");

  auto* sweep = app.add_subcommand("sweep", "run an amplitude x mu grid concurrently");
  sweep->add_option("--config", config, "JSON configuration")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "output root directory");
  sweep->add_option("--threads", threads, "worker threads (default: WAVELAB_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  if (*run) return cmd_run(config, out_dir, std::cout, std::cerr);
  if (*check) return cmd_check_coeffs(cc, std::cout, std::cerr);
  if (*residual) return cmd_residual_study(config, out_dir, self_test, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(config, out_dir, resolve_threads(threads), std::cout, std::cerr);
  return kConfigError;
}
