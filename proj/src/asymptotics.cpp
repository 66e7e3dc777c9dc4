#include "wavelab/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavelab {

namespace {

// G[u] of the lab-frame equation (1 + mu beta d_x^2) u_t = G[u].
Field lab_forcing(const Field& u, const CoefficientSet& c, const Scaling& sc) {
  const Field ux = diff(u, 1);
  const Field uxx = diff(u, 2);
  const Field uxxx = diff(u, 3);
  const double e = sc.eps;
  const double mu = sc.mu;
  Field g(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i];
    const double adv = 1.0 + 1.5 * e * v + e * e * c.iota * v * v + e * e * e * c.kappa * v * v * v;
    g[i] = -adv * ux[i] - mu * c.alpha * uxxx[i] + e * mu * (c.gamma * v * uxxx[i] + c.delta * ux[i] * uxx[i]);
  }
  return g;
}

Field lab_forcing_linearized(const Field& u, const Field& w, const CoefficientSet& c, const Scaling& sc) {
  const Field ux = diff(u, 1);
  const Field uxx = diff(u, 2);
  const Field uxxx = diff(u, 3);
  const Field wx = diff(w, 1);
  const Field wxx = diff(w, 2);
  const Field wxxx = diff(w, 3);
  const double e = sc.eps;
  const double mu = sc.mu;
  Field g(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i];
    const double adv = 1.0 + 1.5 * e * v + e * e * c.iota * v * v + e * e * e * c.kappa * v * v * v;
    const double dadv = 1.5 * e + 2.0 * e * e * c.iota * v + 3.0 * e * e * e * c.kappa * v * v;
    g[i] = -adv * wx[i] - dadv * w[i] * ux[i] - mu * c.alpha * wxxx[i] +
           e * mu * (c.gamma * (w[i] * uxxx[i] + v * wxxx[i]) + c.delta * (wx[i] * uxx[i] + ux[i] * wxx[i]));
  }
  return g;
}

}  // namespace

Field lab_time_derivative(const Field& u, const CoefficientSet& c, const Scaling& sc) {
  return helmholtz_solve(lab_forcing(u, c, sc), sc.mu * c.beta);
}

Field lab_time_derivative_linearized(const Field& u, const Field& v, const CoefficientSet& c, const Scaling& sc) {
  return helmholtz_solve(lab_forcing_linearized(u, v, c, sc), sc.mu * c.beta);
}

TimedPair velocity_pair(const Field& u, const CoefficientSet& c, const Scaling& sc) {
  return TimedPair{u, lab_time_derivative(u, c, sc)};
}

TimedPair pair_from_levels(const Field& previous, const Field& current, const Field& next, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("pair_from_levels: dt must be positive");
  Field ft = next - previous;
  ft *= 0.5 / dt;
  return TimedPair{current, ft};
}

Field reconstruct_zeta_from_u(const TimedPair& p, const Scaling& sc) {
  const Field& u = p.field;
  const Field ux = diff(u, 1);
  const Field uxx = diff(u, 2);
  const Field uxt = diff(p.field_t, 1);
  const double e = sc.eps;
  const double mu = sc.mu;
  Field z(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i];
    z[i] = v + 0.25 * e * v * v + mu / 6.0 * uxt[i] - e * mu * (v * uxx[i] / 6.0 + 5.0 / 48.0 * ux[i] * ux[i]);
  }
  return z;
}

TimedPair zeta_pair_from_velocity(const Field& u, const CoefficientSet& c, const Scaling& sc) {
  const Field ut = lab_time_derivative(u, c, sc);
  const Field utt = lab_time_derivative_linearized(u, ut, c, sc);
  const Field ux = diff(u, 1);
  const Field uxx = diff(u, 2);
  const Field uxt = diff(ut, 1);
  const Field uxxt = diff(ut, 2);
  const Field uxtt = diff(utt, 1);
  const double e = sc.eps;
  const double mu = sc.mu;
  Field zt(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    zt[i] = ut[i] + 0.5 * e * u[i] * ut[i] + mu / 6.0 * uxtt[i] -
            e * mu * ((ut[i] * uxx[i] + u[i] * uxxt[i]) / 6.0 + 5.0 / 24.0 * ux[i] * uxt[i]);
  }
  return TimedPair{reconstruct_zeta_from_u(TimedPair{u, ut}, sc), zt};
}

Field velocity_from_level_line(const Field& ut, double theta, const Scaling& sc) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
  const double lambda = 0.5 * (theta * theta - 1.0 / 3.0);
  if (lambda == 0.0) return ut;
  const Field uxx = diff(ut, 2);
  Field u(ut.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = ut[i] + sc.mu * lambda * uxx[i] + 2.0 * sc.mu * sc.eps * lambda * ut[i] * uxx[i];
  }
  return u;
}

std::string_view to_string(DepthMode m) { return m == DepthMode::Unit ? "unit" : "free-surface"; }

DepthMode depth_mode_from_string(std::string_view s) {
  if (s == "unit") return DepthMode::Unit;
  if (s == "free-surface") return DepthMode::FreeSurface;
  throw std::invalid_argument("depth mode must be 'unit' or 'free-surface'; got '" + std::string(s) + "'");
}

Field reconstruct_u_from_zeta(const TimedPair& p, const Scaling& sc, DepthMode mode) {
  const Field& z = p.field;
  const double e = sc.eps;
  const double mu = sc.mu;
  if (mode == DepthMode::FreeSurface) {
    for (double v : z.values()) {
      if (!(1.0 + e * v > 0.0)) throw std::invalid_argument("free-surface depth 1 + eps zeta must stay positive");
    }
  }
  const Field zx = diff(z, 1);
  const Field zxx = diff(z, 2);
  const Field zxt = diff(p.field_t, 1);
  Field u(z.grid());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = z[i];
    const double h = mode == DepthMode::Unit ? 1.0 : 1.0 + e * v;
    const double corr = -0.25 * e * v * v - 0.125 * e * e * v * v * v + e * e * e / 64.0 * v * v * v * v -
                        mu / 6.0 * zxt[i] + e * mu * (v * zxx[i] / 6.0 + zx[i] * zx[i] / 48.0);
    u[i] = v + corr / h;
  }
  return u;
}

double ResidualReport::combined_l2() const { return std::hypot(r1_l2, r2_l2); }

ResidualReport gn_residual(const TimedPair& zp, const TimedPair& up, const Scaling& sc, double time) {
  const Field& z = zp.field;
  const Field& u = up.field;
  const double e = sc.eps;
  const double mu = sc.mu;
  Field depth = z * e + 1.0;
  for (double h : depth.values()) {
    if (!(h > 0.0)) throw std::invalid_argument("gn_residual: depth 1 + eps zeta must be positive");
  }
  const Field ux = diff(u, 1);
  const Field uxx = diff(u, 2);
  const Field uxt = diff(up.field_t, 1);
  const Field zx = diff(z, 1);

  ResidualReport r;
  r.mu = mu;
  r.eps = e;
  r.time = time;
  r.r1 = zp.field_t + diff(depth * u, 1);

  Field inner(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double h = depth[i];
    inner[i] = h * h * h * (uxt[i] + e * u[i] * uxx[i] - e * ux[i] * ux[i]);
  }
  const Field dinner = diff(inner, 1);
  r.r2 = Field(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    r.r2[i] = up.field_t[i] + zx[i] + e * u[i] * ux[i] - mu / 3.0 * dinner[i] / depth[i];
  }
  r.r1_l2 = norm(r.r1, NormKind::l2());
  r.r1_sup = norm(r.r1, NormKind::linf());
  r.r2_l2 = norm(r.r2, NormKind::l2());
  r.r2_sup = norm(r.r2, NormKind::linf());
  return r;
}

PowerFit fit_power(const std::vector<double>& mu, const std::vector<double>& value) {
  if (mu.size() != value.size()) throw std::invalid_argument("fit_power: length mismatch");
  if (mu.size() < 3) throw std::invalid_argument("need >= 3 points for an order fit; got " + std::to_string(mu.size()));
  const double n = static_cast<double>(mu.size());
  std::vector<double> x(mu.size()), y(mu.size());
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(mu[i] > 0.0) || !(value[i] > 0.0)) throw std::invalid_argument("fit_power: values must be positive");
    x[i] = std::log(mu[i]);
    y[i] = std::log(value[i]);
    xm += x[i] / n;
    ym += y[i] / n;
  }
  // Centred sums avoid cancellation.
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power: mu values must differ");
  PowerFit f;
  f.exponent = sxy / sxx;
  f.log_prefactor = ym - f.exponent * xm;
  return f;
}

namespace {

RunConfig study_run(const StudySetup& s, double mu) {
  RunConfig cfg;
  cfg.coeffs = s.coeffs;
  cfg.scaling = Scaling{s.eps_factor * std::sqrt(mu), mu, 1.0, std::max(1.0, s.eps_factor)};
  cfg.grid = make_grid(s.length, s.n);
  cfg.dt = s.dt;
  cfg.t_end = s.t_probe;
  cfg.profile = s.profile;
  cfg.snapshots.spread = 1;
  return cfg;
}

}  // namespace

OrderStudy consistency_order(const StudySetup& s) {
  if (s.mu_list.size() < 3) {
    throw std::invalid_argument("need >= 3 points for an order fit; got " + std::to_string(s.mu_list.size()));
  }
  OrderStudy study;
  std::vector<double> mus;
  for (double mu : s.mu_list) {
    const RunConfig cfg = study_run(s, mu);
    const RunResult res = run(cfg);
    if (res.termination != Termination::Completed) {
      throw std::runtime_error("solver stopped (" + to_string(res.termination) + ") before t_probe at mu = " +
                               std::to_string(mu));
    }
    const Field& u = res.last_clean.field;
    const TimedPair up = velocity_pair(u, cfg.coeffs, cfg.scaling);
    const TimedPair zp = zeta_pair_from_velocity(u, cfg.coeffs, cfg.scaling);
    ResidualReport rep = gn_residual(zp, up, cfg.scaling, res.last_clean.time);
    study.fitted.push_back(rep.combined_l2());
    mus.push_back(mu);
    study.points.push_back(std::move(rep));
  }
  study.fit = fit_power(mus, study.fitted);
  return study;
}

RoundTripStudy round_trip_study(const StudySetup& s, DepthMode mode) {
  RoundTripStudy out;
  for (double mu : s.mu_list) {
    const RunConfig cfg = study_run(s, mu);
    const Field u = cfg.profile.sample(cfg.grid);
    const TimedPair zp = zeta_pair_from_velocity(u, cfg.coeffs, cfg.scaling);
    const Field back = reconstruct_u_from_zeta(zp, cfg.scaling, mode);
    out.mu.push_back(mu);
    out.error_sup.push_back(norm(back - u, NormKind::linf()));
  }
  out.fit = fit_power(out.mu, out.error_sup);
  return out;
}

nlohmann::json to_json(const OrderStudy& study) {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < study.points.size(); ++i) {
    const auto& p = study.points[i];
    pts.push_back({{"mu", p.mu},
                   {"eps", p.eps},
                   {"t", p.time},
                   {"r1_l2", p.r1_l2},
                   {"r1_sup", p.r1_sup},
                   {"r2_l2", p.r2_l2},
                   {"r2_sup", p.r2_sup},
                   {"fitted", study.fitted[i]}});
  }
  return nlohmann::json{{"exponent", study.fit.exponent}, {"log_prefactor", study.fit.log_prefactor}, {"points", pts}};
}

}  // namespace wavelab
