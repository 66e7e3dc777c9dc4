#pragma once

#include "wavelab/grid.hpp"
#include "wavelab/model_params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wavelab {

struct Profile {
  enum class Kind { Gaussian, Sech2, Sine, Custom };
  Kind kind = Kind::Gaussian;
  double amplitude = 1.0;
  /// Gaussian: A exp(-width (x - center)^2); Sech2: A sech^2(width (x - center)).
  double width = 100.0;
  double center = 0.0;
  /// Sine: A sin(2 pi mode x / L).
  int mode = 1;
  std::vector<double> values;

  Field sample(const Grid& grid) const;
  static Profile gaussian(double amplitude, double width, double center = 0.0);
};

std::string to_string(Profile::Kind kind);

/// Either explicit output times, or a count of evenly spaced snapshots over
/// whatever interval the run actually covers (including early termination).
struct SnapshotPolicy {
  std::vector<double> times;
  std::size_t spread = 0;
};

struct RunConfig {
  CoefficientSet coeffs;
  Scaling scaling;
  Grid grid;
  /// 0 selects the automatic step.
  double dt = 0.0;
  double t_end = 1.0;
  SnapshotPolicy snapshots;
  Profile profile;
  double asselin = 0.0;
  double stop_on_slope = 1e4;
  /// false zeroes every eps-dependent term of the right-hand side.
  bool nonlinear = true;
};

enum class Frame { Lab, Moving };

struct WaveState {
  double time = 0.0;
  Field current;
  Field previous;
  Frame frame = Frame::Moving;
};

struct SlopeRow {
  double t = 0.0;
  double max_slope = 0.0;
  double argmax = 0.0;
  double min_slope = 0.0;
  double argmin = 0.0;
  double invariant = 0.0;
};

struct Snapshot {
  double time = 0.0;
  Field field;  // lab-frame coordinates
};

enum class Termination { Completed, Diverged, SlopeStop };
std::string to_string(Termination t);

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<SlopeRow> slope_series;
  Termination termination = Termination::Completed;
  double termination_time = 0.0;
  /// +1 when the max slope crossed the stop threshold first, -1 for the min slope.
  int crossing_sign = 0;
  double stop_threshold = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  /// Last state that was finite and below the slope threshold (lab frame).
  Snapshot last_clean;
};

/// Right-hand side F[u] of the moving-frame scheme.
Field eval_rhs(const Field& u, const CoefficientSet& coeffs, const Scaling& scaling, bool nonlinear = true);

/// Lab-frame linear phase speed (1 - mu alpha k^2) / (1 - mu beta k^2).
double dispersion_speed(double k, const CoefficientSet& coeffs, double mu);

/// 0.25 dx / max |dispersion_speed| over the grid's discrete wavenumbers,
/// shrunk so that t_end is an integer number of steps.
double auto_dt(const Grid& grid, const CoefficientSet& coeffs, double mu, double t_end);

/// Stateful stepper holding the factorized implicit operator.
class Stepper {
 public:
  explicit Stepper(const RunConfig& config, double dt);

  WaveState initial_state(const Field& u0) const;
  /// Euler start from level 0 to level 1.
  WaveState first_step(const WaveState& s0) const;
  WaveState leapfrog_step(const WaveState& s) const;
  /// H(F[u]): the moving-frame time derivative.
  Field time_derivative(const Field& u) const;

  double dt() const { return dt_; }

 private:
  RunConfig config_;
  double dt_;
  HelmholtzOperator implicit_;
};

WaveState first_step(const WaveState& s0, const RunConfig& config, double dt);
WaveState leapfrog_step(const WaveState& s, const RunConfig& config, double dt);

/// Rejects configurations that the scheme cannot integrate.
void validate(const RunConfig& config);

RunResult run(const RunConfig& config);

}  // namespace wavelab
