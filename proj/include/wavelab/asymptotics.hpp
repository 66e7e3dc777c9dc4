#pragma once

#include "wavelab/grid.hpp"
#include "wavelab/model_params.hpp"
#include "wavelab/solver.hpp"

#include <vector>

#include <nlohmann/json.hpp>

namespace wavelab {

/// A field and its time derivative at the same instant.
struct TimedPair {
  Field field;
  Field field_t;
};

/// u_t of the lab-frame equation: (1 + mu beta D2)^{-1} G[u].
Field lab_time_derivative(const Field& u, const CoefficientSet& coeffs, const Scaling& scaling);
/// Directional derivative of lab_time_derivative at u along v.
Field lab_time_derivative_linearized(const Field& u, const Field& v, const CoefficientSet& coeffs,
                                     const Scaling& scaling);

TimedPair velocity_pair(const Field& u, const CoefficientSet& coeffs, const Scaling& scaling);
/// Centred difference of two neighbouring levels, for data without an equation.
TimedPair pair_from_levels(const Field& previous, const Field& current, const Field& next, double dt);

/// zeta = u + (eps/4) u^2 + (mu/6) u_xt - eps mu [(1/6) u u_xx + (5/48) u_x^2].
Field reconstruct_zeta_from_u(const TimedPair& u, const Scaling& scaling);
/// zeta and its time derivative; the latter needs u_tt from the equation.
TimedPair zeta_pair_from_velocity(const Field& u, const CoefficientSet& coeffs, const Scaling& scaling);

/// u = u^theta + mu lambda u^theta_xx + 2 mu eps lambda u^theta u^theta_xx.
Field velocity_from_level_line(const Field& u_theta, double theta, const Scaling& scaling);

enum class DepthMode { Unit, FreeSurface };
std::string_view to_string(DepthMode m);
DepthMode depth_mode_from_string(std::string_view s);

/// u = zeta + (1/h)(-(eps/4) zeta^2 - (eps^2/8) zeta^3 + (eps^3/64) zeta^4
///       - (mu/6) zeta_xt + eps mu [(1/6) zeta zeta_xx + (1/48) zeta_x^2])
/// with h = 1 or h = 1 + eps zeta.
Field reconstruct_u_from_zeta(const TimedPair& zeta, const Scaling& scaling, DepthMode mode = DepthMode::FreeSurface);

struct ResidualReport {
  double mu = 0.0;
  double eps = 0.0;
  double time = 0.0;
  /// Raw norms of r1 and r2.
  double r1_l2 = 0.0;
  double r1_sup = 0.0;
  double r2_l2 = 0.0;
  double r2_sup = 0.0;
  Field r1;
  Field r2;

  double combined_l2() const;
  /// Norms divided by mu^2.
  double r1_l2_normalized() const { return r1_l2 / (mu * mu); }
  double r1_sup_normalized() const { return r1_sup / (mu * mu); }
  double r2_l2_normalized() const { return r2_l2 / (mu * mu); }
  double r2_sup_normalized() const { return r2_sup / (mu * mu); }
};

ResidualReport gn_residual(const TimedPair& zeta, const TimedPair& u, const Scaling& scaling, double time = 0.0);

struct PowerFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
};

/// Least-squares slope of log(value) against log(mu); needs three points.
PowerFit fit_power(const std::vector<double>& mu, const std::vector<double>& value);

struct StudySetup {
  std::vector<double> mu_list{0.2, 0.1, 0.05, 0.025};
  CoefficientSet coeffs;
  Profile profile = Profile::gaussian(1.0, 1.0);
  double length = 20.0;
  std::size_t n = 1024;
  double t_probe = 0.5;
  double dt = 0.0;
  /// eps = eps_factor * sqrt(mu).
  double eps_factor = 1.0;
};

struct OrderStudy {
  PowerFit fit;
  std::vector<ResidualReport> points;
  /// Value that was fitted at each mu.
  std::vector<double> fitted;
};

/// Integrates to t_probe at every mu, builds the velocity/elevation pair and
/// fits the power of mu in the combined raw residual.
OrderStudy consistency_order(const StudySetup& setup);

struct RoundTripStudy {
  PowerFit fit;
  std::vector<double> mu;
  std::vector<double> error_sup;
};

/// sup |u_back - u| after zeta-from-u followed by u-from-zeta, at t = 0.
RoundTripStudy round_trip_study(const StudySetup& setup, DepthMode mode);

nlohmann::json to_json(const OrderStudy& study);

}  // namespace wavelab
