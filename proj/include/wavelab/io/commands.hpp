#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace wavelab::io {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2 };

int cmd_run(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
            std::ostream& err);

struct CheckCoeffsArgs {
  std::string family;
  std::optional<std::string> p;
  std::optional<std::string> q;
  std::string theta2 = "1/3";
  double kappa_hat = 1.0;
  double mu = 0.2;
  std::optional<double> eps;
  bool json = false;
};

int cmd_check_coeffs(const CheckCoeffsArgs& args, std::ostream& out, std::ostream& err);

int cmd_residual_study(const std::filesystem::path& config, const std::filesystem::path& out_dir, bool self_test,
                       std::ostream& out, std::ostream& err);

int cmd_sweep(const std::filesystem::path& config, const std::filesystem::path& out_dir, unsigned threads,
              std::ostream& out, std::ostream& err);

/// --threads when given, else WAVELAB_THREADS, else hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> flag);

}  // namespace wavelab::io
