#pragma once

#include "wavelab/grid.hpp"
#include "wavelab/model_params.hpp"
#include "wavelab/solver.hpp"

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace wavelab {

struct SlopeSample {
  double time = 0.0;
  double max_slope = 0.0;
  double argmax = 0.0;
  double min_slope = 0.0;
  double argmin = 0.0;
};

/// Extremes of diff(f, 1) and their x-locations; ties go to the smallest x.
SlopeSample extremal_slopes(const Field& f, double time = 0.0);

/// Integral of zeta^2 + (mu/12) zeta_x^2.
double invariant_I(const Field& zeta, double mu);
/// Integral of zeta^2 + (mu/12) zeta_x^2 + zeta_xx^2 + (mu/12) zeta_xxx^2.
double energy_E(const Field& zeta, double mu);

enum class CriterionMode { SupZeta, SupSlope };
std::string_view to_string(CriterionMode m);
CriterionMode criterion_mode_from_string(std::string_view s);

struct CriterionReport {
  double c0 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double m0 = 0.0;
  double t_lower = 0.0;
  double t_upper = 0.0;
  CriterionMode mode = CriterionMode::SupZeta;
};

/// Right-hand side of the blow-up criterion for a given C0.
double criterion_rhs(double c0, const Scaling& scaling);
CriterionReport blowup_criterion(const Field& zeta0, const Scaling& scaling, CriterionMode mode);

/// Constant K multiplying mu^{-3/4} in the slope differential inequalities.
double slope_bound_constant(double c0, double eps);

struct BoundVerdict {
  double t = 0.0;
  double m = 0.0;
  double dm = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double tolerance = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

struct BoundCheckReport {
  std::vector<BoundVerdict> steps;
  std::size_t passed = 0;
  double fraction() const { return steps.empty() ? 1.0 : static_cast<double>(passed) / static_cast<double>(steps.size()); }
  bool all_ok() const { return passed == steps.size(); }
};

/// Compares centred differences of M(t) with the lower and upper slope bounds.
/// The tolerance is three times the truncation-error estimate of the centred
/// difference plus rel_slack times the magnitude of the bound.
BoundCheckReport slope_ode_bounds_check(const std::vector<double>& t, const std::vector<double>& m,
                                        const Scaling& scaling, double c0, double rel_slack = 1e-9);
BoundCheckReport slope_ode_bounds_check(const std::vector<SlopeRow>& series, const Scaling& scaling,
                                        double c0, double rel_slack = 1e-9);

enum class Breaker { Plunging, Surging, None };
std::string_view to_string(Breaker b);

struct BreakerVerdict {
  Breaker type = Breaker::None;
  /// The other extremal slope also passed half the threshold.
  bool ambiguous = false;
};

BreakerVerdict classify_breaker(const RunResult& result);

struct Crossing {
  double time = 0.0;
  int sign = 0;
};

/// First row whose max or |min| slope exceeds the threshold.
std::optional<Crossing> first_crossing(const std::vector<SlopeRow>& series, double threshold);

struct BreakingReport {
  BreakerVerdict verdict;
  std::optional<double> detected_time;
  CriterionReport criterion;
  /// The same criterion evaluated in the other mode.
  CriterionReport criterion_other;
  /// Set only when the criterion holds and a crossing was detected.
  std::optional<bool> bracket_ok;
  std::optional<bool> below_upper;
  std::optional<bool> above_lower;
  double invariant_drift = 0.0;
  /// Drift over the leading rows whose slopes stay below smooth_slope_limit.
  double invariant_drift_smooth = 0.0;
  double smooth_window_end = 0.0;
  std::map<double, std::optional<double>> threshold_sensitivity;
};

/// Relative drift max |I(t) - I(0)| / I(0) over rows before any slope stop.
double invariant_drift(const RunResult& result);

constexpr double smooth_slope_limit = 10.0;

struct WindowDrift {
  double drift = 0.0;
  double window_end = 0.0;
};

/// Relative drift over the leading rows with max |slope| below the limit.
WindowDrift invariant_drift_window(const std::vector<SlopeRow>& series, double slope_limit = smooth_slope_limit);

BreakingReport analyze_breaking(const RunResult& result, const Field& zeta0, const Scaling& scaling,
                                CriterionMode mode = CriterionMode::SupZeta,
                                std::vector<double> sensitivity = {1e3, 1e4, 1e5});

nlohmann::json to_json(const CriterionReport& c);
nlohmann::json to_json(const BreakingReport& r);

}  // namespace wavelab
