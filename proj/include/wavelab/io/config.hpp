#pragma once

#include "wavelab/asymptotics.hpp"
#include "wavelab/breaking.hpp"
#include "wavelab/solver.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wavelab::io {

/// Thrown for anything wrong with a configuration file; the message names
/// the offending field (and the line for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  std::string name = "run";
  std::optional<std::string> preset;
  RunConfig run;
  /// "auto" or "explicit".
  std::string dt_policy = "auto";
  /// Literal eps entry, e.g. "sqrt(mu)" or a number.
  nlohmann::json eps_entry;
  bool breaking_report = true;
  CriterionMode criterion_mode = CriterionMode::SupZeta;
  std::vector<double> sensitivity{1e3, 1e4, 1e5};
};

enum class FamilyName { OneParam, TwoParam, Surface };

struct ResidualStudySpec {
  std::string name = "residual_study";
  FamilyName family = FamilyName::OneParam;
  Rational p{-1, 12};
  Rational theta2{1, 3};
  StudySetup setup;
  bool round_trip = false;
  DepthMode depth_mode = DepthMode::FreeSurface;
};

struct SweepSpec {
  std::string name = "sweep";
  ExperimentSpec base;
  std::vector<double> amplitudes;
  std::vector<double> mu_list;
};

nlohmann::json read_json_file(const std::filesystem::path& path);

ExperimentSpec parse_experiment(const nlohmann::json& j);
ResidualStudySpec parse_residual_study(const nlohmann::json& j);
SweepSpec parse_sweep(const nlohmann::json& j);

/// Coefficients for a preset name or an explicit "coefficients" object.
CoefficientSet resolve_coefficients(const nlohmann::json& j, std::optional<std::string>& preset_out);

ExactCoefficients family_coefficients(FamilyName family, const Rational& p, const Rational& theta2);
FamilyName family_from_string(const std::string& s);
std::string to_string(FamilyName f);

}  // namespace wavelab::io
