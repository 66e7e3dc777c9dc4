#include "wavelab/solver.hpp"

#include "wavelab/breaking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wavelab {

Field Profile::sample(const Grid& grid) const {
  switch (kind) {
    case Kind::Gaussian:
      return Field::sample(grid, [this](double x) {
        const double d = x - center;
        return amplitude * std::exp(-width * d * d);
      });
    case Kind::Sech2:
      return Field::sample(grid, [this](double x) {
        const double s = 1.0 / std::cosh(width * (x - center));
        return amplitude * s * s;
      });
    case Kind::Sine: {
      const double k = 2.0 * std::numbers::pi * mode / grid.length;
      return Field::sample(grid, [this, k](double x) { return amplitude * std::sin(k * x); });
    }
    case Kind::Custom:
      if (values.size() != grid.n) {
        throw std::invalid_argument("custom profile has " + std::to_string(values.size()) +
                                    " values but the grid has " + std::to_string(grid.n));
      }
      return Field(grid, values);
  }
  throw std::logic_error("unknown profile kind");
}

Profile Profile::gaussian(double amplitude, double width, double center) {
  Profile p;
  p.amplitude = amplitude;
  p.width = width;
  p.center = center;
  return p;
}

std::string to_string(Profile::Kind kind) {
  switch (kind) {
    case Profile::Kind::Gaussian: return "gaussian";
    case Profile::Kind::Sech2: return "sech2";
    case Profile::Kind::Sine: return "sine";
    case Profile::Kind::Custom: return "custom";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Diverged: return "diverged";
    case Termination::SlopeStop: return "slope_stop";
  }
  return "?";
}

Field eval_rhs(const Field& u, const CoefficientSet& c, const Scaling& sc, bool nonlinear) {
  const Field ux = diff(u, 1);
  const Field uxxx = diff(u, 3);
  const double eps = sc.eps;
  const double mu = sc.mu;
  const double lin = -mu * (c.alpha - c.beta);
  Field out(u.grid());
  if (!nonlinear) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = lin * uxxx[i];
    return out;
  }
  const Field uxx = diff(u, 2);
  const double e2i = eps * eps * c.iota;
  const double e3k = eps * eps * eps * c.kappa;
  const double em = eps * mu;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i];
    const double adv = 1.5 * eps * v + e2i * v * v + e3k * v * v * v;
    out[i] = -adv * ux[i] + lin * uxxx[i] + em * (c.gamma * v * uxxx[i] + c.delta * ux[i] * uxx[i]);
  }
  return out;
}

double dispersion_speed(double k, const CoefficientSet& c, double mu) {
  const double den = 1.0 - mu * c.beta * k * k;
  if (std::abs(den) < 1e-14) {
    throw std::invalid_argument("dispersion_speed: resonant denominator 1 - mu beta k^2 = 0");
  }
  return (1.0 - mu * c.alpha * k * k) / den;
}

double auto_dt(const Grid& grid, const CoefficientSet& coeffs, double mu, double t_end) {
  double fastest = 0.0;
  for (std::size_t m = 0; m <= grid.n / 2; ++m) {
    const double kh = std::sqrt(khat2(wavenumber(grid, m), grid.dx()));
    fastest = std::max(fastest, std::abs(dispersion_speed(kh, coeffs, mu)));
  }
  double dt = 0.25 * grid.dx() / fastest;
  if (t_end > 0.0) dt = t_end / std::ceil(t_end / dt);
  return dt;
}

void validate(const RunConfig& cfg) {
  make_scaling(cfg.scaling.eps, cfg.scaling.mu, cfg.scaling.mu0, cfg.scaling.bigM);
  make_grid(cfg.grid.length, cfg.grid.n, cfg.grid.origin);
  if (!(cfg.coeffs.beta < 0.0)) {
    std::ostringstream os;
    os << "the scheme requires beta < 0; got beta = " << cfg.coeffs.beta;
    throw std::invalid_argument(os.str());
  }
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  if (!(cfg.dt >= 0.0)) throw std::invalid_argument("dt must be positive (or 0 for automatic)");
  if (!(cfg.stop_on_slope > 0.0)) throw std::invalid_argument("stop_on_slope must be positive");
  if (cfg.asselin < 0.0 || cfg.asselin >= 0.5) throw std::invalid_argument("asselin coefficient must lie in [0, 0.5)");
  for (double t : cfg.snapshots.times) {
    if (t < 0.0 || t > cfg.t_end * (1.0 + 1e-12)) {
      throw std::invalid_argument("snapshot time " + std::to_string(t) + " outside [0, t_end]");
    }
  }
}

Stepper::Stepper(const RunConfig& config, double dt)
    : config_(config), dt_(dt), implicit_(config.grid, config.scaling.mu * config.coeffs.beta) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
}

Field Stepper::time_derivative(const Field& u) const {
  return implicit_.solve(eval_rhs(u, config_.coeffs, config_.scaling, config_.nonlinear));
}

WaveState Stepper::initial_state(const Field& u0) const {
  return WaveState{0.0, u0, u0, Frame::Moving};
}

WaveState Stepper::first_step(const WaveState& s0) const {
  Field next = s0.current + dt_ * time_derivative(s0.current);
  return WaveState{s0.time + dt_, std::move(next), s0.current, s0.frame};
}

WaveState Stepper::leapfrog_step(const WaveState& s) const {
  Field next = s.previous + (2.0 * dt_) * time_derivative(s.current);
  Field middle = s.current;
  if (config_.asselin > 0.0) {
    const double a = config_.asselin;
    for (std::size_t i = 0; i < middle.size(); ++i) {
      middle[i] += a * (next[i] - 2.0 * s.current[i] + s.previous[i]);
    }
  }
  return WaveState{s.time + dt_, std::move(next), std::move(middle), s.frame};
}

WaveState first_step(const WaveState& s0, const RunConfig& config, double dt) {
  return Stepper(config, dt).first_step(s0);
}

WaveState leapfrog_step(const WaveState& s, const RunConfig& config, double dt) {
  return Stepper(config, dt).leapfrog_step(s);
}

namespace {

SlopeRow slope_row(const Field& lab, double t, double mu) {
  const auto s = extremal_slopes(lab, t);
  return SlopeRow{t, s.max_slope, s.argmax, s.min_slope, s.argmin, invariant_I(lab, mu)};
}

// Keeps at most 2*count evenly strided states so that `count` roughly evenly
// spaced snapshots can be chosen once the final time is known.
class SpreadRecorder {
 public:
  explicit SpreadRecorder(std::size_t count) : count_(std::max<std::size_t>(count, 1)) {}

  void offer(std::size_t step, const Snapshot& snap) {
    if (step % stride_ != 0) return;
    kept_.push_back({step, snap});
    if (kept_.size() > 2 * count_) {
      stride_ *= 2;
      std::erase_if(kept_, [this](const auto& e) { return e.first % stride_ != 0; });
    }
  }

  std::vector<Snapshot> pick(const Snapshot& last) const {
    std::vector<Snapshot> pool;
    for (const auto& e : kept_) pool.push_back(e.second);
    if (pool.empty() || pool.back().time < last.time) pool.push_back(last);
    if (count_ == 1 || pool.size() == 1) return {pool.back()};
    std::vector<Snapshot> out;
    std::size_t prev = pool.size();
    const double t_last = pool.back().time;
    for (std::size_t j = 0; j < count_; ++j) {
      const double target = t_last * static_cast<double>(j) / static_cast<double>(count_ - 1);
      std::size_t best = 0;
      for (std::size_t i = 1; i < pool.size(); ++i) {
        if (std::abs(pool[i].time - target) < std::abs(pool[best].time - target)) best = i;
      }
      if (best != prev) out.push_back(pool[best]);
      prev = best;
    }
    return out;
  }

 private:
  std::size_t count_;
  std::size_t stride_ = 1;
  std::vector<std::pair<std::size_t, Snapshot>> kept_;
};

}  // namespace

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  RunResult result;
  result.stop_threshold = cfg.stop_on_slope;
  const double dt = cfg.dt > 0.0 ? (cfg.t_end > 0.0 ? cfg.t_end / std::ceil(cfg.t_end / cfg.dt - 1e-9) : cfg.dt)
                                 : auto_dt(cfg.grid, cfg.coeffs, cfg.scaling.mu, cfg.t_end);
  const std::size_t steps = cfg.t_end > 0.0 ? static_cast<std::size_t>(std::llround(cfg.t_end / dt)) : 0;
  result.dt = dt;

  const Field u0 = cfg.profile.sample(cfg.grid);
  if (!u0.all_finite()) throw std::invalid_argument("initial profile has non-finite values");

  const bool fixed = !cfg.snapshots.times.empty();
  const std::size_t spread_count = fixed ? 0 : (cfg.snapshots.spread > 0 ? cfg.snapshots.spread : 2);
  std::vector<std::size_t> wanted;
  for (double t : cfg.snapshots.times) wanted.push_back(static_cast<std::size_t>(std::llround(t / dt)));
  SpreadRecorder spread(spread_count);

  auto record = [&](std::size_t step, const Snapshot& snap) {
    if (fixed) {
      for (std::size_t w : wanted) {
        if (w == step) result.snapshots.push_back(snap);
      }
    } else {
      spread.offer(step, snap);
    }
  };

  Snapshot lab{0.0, u0.with_grid(cfg.grid)};
  result.slope_series.push_back(slope_row(lab.field, 0.0, cfg.scaling.mu));
  result.last_clean = lab;
  record(0, lab);

  if (steps > 0) {
    const Stepper stepper(cfg, dt);
    WaveState state = stepper.initial_state(u0);
    for (std::size_t step = 1; step <= steps; ++step) {
      state = step == 1 ? stepper.first_step(state) : stepper.leapfrog_step(state);
      const double t = static_cast<double>(step) * dt;
      state.time = t;
      result.steps = step;
      if (!state.current.all_finite()) {
        result.termination = Termination::Diverged;
        result.termination_time = t;
        break;
      }
      Snapshot snap{t, state.current.with_grid(cfg.grid.shifted(t))};
      const SlopeRow row = slope_row(snap.field, t, cfg.scaling.mu);
      result.slope_series.push_back(row);
      const bool up = row.max_slope > cfg.stop_on_slope;
      const bool down = -row.min_slope > cfg.stop_on_slope;
      if (up || down) {
        result.termination = Termination::SlopeStop;
        result.termination_time = t;
        result.crossing_sign = up && down ? (row.max_slope >= -row.min_slope ? 1 : -1) : (up ? 1 : -1);
        break;
      }
      result.last_clean = snap;
      record(step, snap);
    }
  }
  if (result.termination == Termination::Completed) result.termination_time = result.last_clean.time;
  if (!fixed) result.snapshots = spread.pick(result.last_clean);
  return result;
}

}  // namespace wavelab
