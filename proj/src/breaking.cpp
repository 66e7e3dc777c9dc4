#include "wavelab/breaking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wavelab {

SlopeSample extremal_slopes(const Field& f, double time) {
  const Field s = diff(f, 1);
  std::size_t imax = 0;
  std::size_t imin = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[imax]) imax = i;
    if (s[i] < s[imin]) imin = i;
  }
  const Grid& g = f.grid();
  return SlopeSample{time, s[imax], g.x(imax), s[imin], g.x(imin)};
}

namespace {
double sum_sq(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().dx();
}
}  // namespace

double invariant_I(const Field& zeta, double mu) {
  return sum_sq(zeta) + mu / 12.0 * sum_sq(diff(zeta, 1));
}

double energy_E(const Field& zeta, double mu) {
  return invariant_I(zeta, mu) + sum_sq(diff(zeta, 2)) + mu / 12.0 * sum_sq(diff(zeta, 3));
}

std::string_view to_string(CriterionMode m) {
  return m == CriterionMode::SupZeta ? "sup_zeta0" : "sup_slope0";
}

CriterionMode criterion_mode_from_string(std::string_view s) {
  if (s == "sup_zeta0") return CriterionMode::SupZeta;
  if (s == "sup_slope0") return CriterionMode::SupSlope;
  throw std::invalid_argument("criterion mode must be 'sup_zeta0' or 'sup_slope0'; got '" + std::string(s) + "'");
}

double criterion_rhs(double c0, const Scaling& sc) {
  const double e = sc.eps;
  const double m34 = std::pow(sc.mu, -0.75);
  const double m12 = std::pow(sc.mu, -0.5);
  return 28.0 / 3.0 * c0 * m34 + 0.5 * e * std::pow(c0, 1.5) * m34 + 0.25 * e * e * c0 * c0 * m34 +
         7.0 / 3.0 * c0 * m12 + 16.0 / 3.0 * std::sqrt(c0) * m34 / e;
}

CriterionReport blowup_criterion(const Field& zeta0, const Scaling& sc, CriterionMode mode) {
  if (zeta0.max_abs() == 0.0) throw std::invalid_argument("blowup_criterion: the zero profile is excluded");
  const Field slope = diff(zeta0, 1);
  CriterionReport r;
  r.mode = mode;
  r.c0 = sum_sq(zeta0) + sum_sq(slope);
  const double sup_zeta = *std::max_element(zeta0.values().begin(), zeta0.values().end());
  r.m0 = *std::max_element(slope.values().begin(), slope.values().end());
  if (!(r.m0 > 0.0)) throw std::invalid_argument("blowup_criterion: initial max slope must be positive");
  const double s = mode == CriterionMode::SupZeta ? sup_zeta : r.m0;
  r.lhs = s * s;
  r.rhs = criterion_rhs(r.c0, sc);
  r.satisfied = r.lhs >= r.rhs;
  r.t_lower = 1.0 / (4.0 * sc.eps * r.m0);
  r.t_upper = 4.0 / (sc.eps * r.m0);
  return r;
}

double slope_bound_constant(double c0, double e) {
  return 14.0 * c0 * e + 0.75 * e * e * std::pow(c0, 1.5) + 0.375 * e * e * e * c0 * c0 + 8.0 * std::sqrt(c0);
}

BoundCheckReport slope_ode_bounds_check(const std::vector<double>& t, const std::vector<double>& m,
                                        const Scaling& sc, double c0, double rel_slack) {
  if (t.size() != m.size()) throw std::invalid_argument("slope_ode_bounds_check: series length mismatch");
  BoundCheckReport rep;
  const std::size_t n = t.size();
  if (n < 4) return rep;
  const double k = slope_bound_constant(c0, sc.eps) * std::pow(sc.mu, -0.75);
  const double extra = 3.5 * sc.eps * c0 / std::sqrt(sc.mu);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h = 0.5 * (t[i + 1] - t[i - 1]);
    BoundVerdict v;
    v.t = t[i];
    v.m = m[i];
    v.dm = (m[i + 1] - m[i - 1]) / (2.0 * h);
    // Truncation error of the centred difference is h^2 |M'''| / 6.
    double third;
    if (i >= 2 && i + 2 < n) {
      third = std::abs(m[i + 2] - 2.0 * m[i + 1] + 2.0 * m[i - 1] - m[i - 2]) / 2.0;
    } else if (i + 2 < n) {
      third = std::abs(m[i + 2] - 3.0 * m[i + 1] + 3.0 * m[i] - m[i - 1]);
    } else {
      third = std::abs(m[i + 1] - 3.0 * m[i] + 3.0 * m[i - 1] - m[i - 2]);
    }
    const double quad = 1.75 * sc.eps * m[i] * m[i];
    v.lower = quad - k;
    v.upper = quad + k + extra;
    v.tolerance = 3.0 * third / (6.0 * h) + rel_slack * std::max({std::abs(v.lower), std::abs(v.upper), std::abs(v.dm)});
    v.lower_ok = v.dm >= v.lower - v.tolerance;
    v.upper_ok = v.dm <= v.upper + v.tolerance;
    if (v.lower_ok && v.upper_ok) ++rep.passed;
    rep.steps.push_back(v);
  }
  return rep;
}

BoundCheckReport slope_ode_bounds_check(const std::vector<SlopeRow>& series, const Scaling& sc, double c0,
                                        double rel_slack) {
  std::vector<double> t;
  std::vector<double> m;
  for (const auto& r : series) {
    t.push_back(r.t);
    m.push_back(r.max_slope);
  }
  return slope_ode_bounds_check(t, m, sc, c0, rel_slack);
}

std::string_view to_string(Breaker b) {
  switch (b) {
    case Breaker::Plunging: return "Plunging";
    case Breaker::Surging: return "Surging";
    case Breaker::None: return "None";
  }
  return "?";
}

std::optional<Crossing> first_crossing(const std::vector<SlopeRow>& series, double threshold) {
  for (const auto& r : series) {
    const bool up = r.max_slope > threshold;
    const bool down = -r.min_slope > threshold;
    if (up || down) {
      const int sign = up && down ? (r.max_slope >= -r.min_slope ? 1 : -1) : (up ? 1 : -1);
      return Crossing{r.t, sign};
    }
  }
  return std::nullopt;
}

BreakerVerdict classify_breaker(const RunResult& result) {
  BreakerVerdict v;
  if (result.termination == Termination::Completed || result.slope_series.empty()) return v;
  int sign = result.crossing_sign;
  if (result.termination == Termination::Diverged) {
    const auto& last = result.slope_series.back();
    sign = last.max_slope >= -last.min_slope ? 1 : -1;
    v.ambiguous = true;
  }
  v.type = sign > 0 ? Breaker::Surging : Breaker::Plunging;
  const double half = 0.5 * result.stop_threshold;
  double other = 0.0;
  for (const auto& r : result.slope_series) other = std::max(other, sign > 0 ? -r.min_slope : r.max_slope);
  if (other > half) v.ambiguous = true;
  return v;
}

double invariant_drift(const RunResult& result) {
  const auto& s = result.slope_series;
  if (s.empty() || s.front().invariant == 0.0) return 0.0;
  std::size_t end = s.size();
  if (result.termination != Termination::Completed && end > 1) --end;
  double drift = 0.0;
  for (std::size_t i = 0; i < end; ++i) {
    drift = std::max(drift, std::abs(s[i].invariant - s.front().invariant));
  }
  return drift / std::abs(s.front().invariant);
}

WindowDrift invariant_drift_window(const std::vector<SlopeRow>& series, double slope_limit) {
  WindowDrift w;
  if (series.empty() || series.front().invariant == 0.0) return w;
  const double i0 = series.front().invariant;
  for (const auto& r : series) {
    if (!(std::max(r.max_slope, -r.min_slope) < slope_limit)) break;
    w.drift = std::max(w.drift, std::abs(r.invariant - i0) / std::abs(i0));
    w.window_end = r.t;
  }
  return w;
}

BreakingReport analyze_breaking(const RunResult& result, const Field& zeta0, const Scaling& sc, CriterionMode mode,
                                std::vector<double> sensitivity) {
  BreakingReport r;
  r.verdict = classify_breaker(result);
  if (result.termination != Termination::Completed) r.detected_time = result.termination_time;
  const auto other = mode == CriterionMode::SupZeta ? CriterionMode::SupSlope : CriterionMode::SupZeta;
  r.criterion = blowup_criterion(zeta0, sc, mode);
  r.criterion_other = blowup_criterion(zeta0, sc, other);
  if (r.criterion.satisfied && r.detected_time) {
    r.below_upper = *r.detected_time <= r.criterion.t_upper;
    r.above_lower = *r.detected_time >= r.criterion.t_lower;
    r.bracket_ok = *r.below_upper && *r.above_lower;
  }
  r.invariant_drift = invariant_drift(result);
  const WindowDrift w = invariant_drift_window(result.slope_series);
  r.invariant_drift_smooth = w.drift;
  r.smooth_window_end = w.window_end;
  for (double thr : sensitivity) {
    std::optional<double> t;
    if (thr <= result.stop_threshold) {
      if (auto c = first_crossing(result.slope_series, thr)) t = c->time;
    }
    r.threshold_sensitivity[thr] = t;
  }
  return r;
}

}  // namespace wavelab

namespace wavelab {

namespace {
nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }
nlohmann::json opt(const std::optional<bool>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }
}  // namespace

nlohmann::json to_json(const CriterionReport& c) {
  return nlohmann::json{{"c0", c.c0},         {"lhs", c.lhs},         {"rhs", c.rhs},
                        {"satisfied", c.satisfied}, {"mode", std::string(to_string(c.mode))},
                        {"m0", c.m0},         {"t_lower", c.t_lower}, {"t_upper", c.t_upper}};
}

nlohmann::json to_json(const BreakingReport& r) {
  nlohmann::json sens = nlohmann::json::object();
  for (const auto& [thr, t] : r.threshold_sensitivity) {
    char key[32];
    std::snprintf(key, sizeof key, "%g", thr);
    sens[key] = opt(t);
  }
  return nlohmann::json{
      {"classification", std::string(to_string(r.verdict.type))},
      {"ambiguous", r.verdict.ambiguous},
      {"detected_time", opt(r.detected_time)},
      {"bracket", {r.criterion.t_lower, r.criterion.t_upper}},
      {"bracket_ok", opt(r.bracket_ok)},
      {"below_upper", opt(r.below_upper)},
      {"above_lower", opt(r.above_lower)},
      {"criterion", to_json(r.criterion)},
      {"criterion_other_mode", to_json(r.criterion_other)},
      {"invariant_drift", r.invariant_drift},
      {"invariant_drift_smooth", {{"drift", r.invariant_drift_smooth}, {"window_end", r.smooth_window_end}, {"slope_limit", smooth_slope_limit}}},
      {"threshold_sensitivity", sens},
  };
}

}  // namespace wavelab
