#include "wavelab/breaking.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace wl = wavelab;
using std::numbers::pi;

namespace {

wl::RunConfig gaussian_run(const char* preset, std::size_t n) {
  wl::RunConfig c;
  c.coeffs = wl::preset(preset).to_double();
  c.scaling = wl::make_scaling(std::sqrt(0.2), 0.2);
  c.grid = wl::make_grid(8.0, n);
  c.t_end = 10.0;
  c.profile = wl::Profile::gaussian(1.0, 100.0);
  c.snapshots.spread = 2;
  return c;
}

wl::SlopeRow row(double t, double mx, double mn) { return wl::SlopeRow{t, mx, 0.0, mn, 0.0, 1.0}; }

wl::RunResult synthetic(std::vector<wl::SlopeRow> rows, wl::Termination term, int sign, double thr = 100.0) {
  wl::RunResult r;
  r.slope_series = std::move(rows);
  r.termination = term;
  r.crossing_sign = sign;
  r.stop_threshold = thr;
  r.termination_time = r.slope_series.back().t;
  return r;
}

// Direct transcription of the five-term criterion bound.
double rhs_oracle(double c0, double eps, double mu) {
  return 28.0 / 3.0 * c0 * std::pow(mu, -0.75) + 0.5 * eps * std::pow(c0, 1.5) * std::pow(mu, -0.75) +
         0.25 * eps * eps * c0 * c0 * std::pow(mu, -0.75) + 7.0 / 3.0 * c0 * std::pow(mu, -0.5) +
         16.0 / 3.0 * std::sqrt(c0) * std::pow(mu, -0.75) / eps;
}

}  // namespace

TEST(ExtremalSlopes, ConstantSineAndGaussian) {
  const auto g = wl::make_grid(2.0 * pi, 1024, 0.0);
  const auto k = wl::extremal_slopes(wl::Field::sample(g, [](double) { return 1.0; }));
  EXPECT_EQ(k.max_slope, 0.0);
  EXPECT_EQ(k.min_slope, 0.0);
  EXPECT_EQ(k.argmax, g.x(0));
  EXPECT_EQ(k.argmin, g.x(0));

  const auto s = wl::extremal_slopes(wl::Field::sample(g, [](double x) { return std::sin(x); }));
  EXPECT_NEAR(s.max_slope, 1.0, 1e-5);
  EXPECT_NEAR(s.min_slope, -1.0, 1e-5);
  EXPECT_NEAR(s.argmax, 0.0, 1e-12);
  EXPECT_NEAR(s.argmin, pi, 1e-12);

  const auto w = wl::make_grid(4.0, 4096);
  const auto gs = wl::extremal_slopes(wl::Field::sample(w, [](double x) { return std::exp(-100.0 * x * x); }));
  const double xs = 1.0 / std::sqrt(200.0);
  const double peak = 200.0 * xs * std::exp(-0.5);
  EXPECT_NEAR(gs.max_slope, peak, 1e-3 * peak);
  EXPECT_NEAR(gs.argmax, -xs, 2.0 * w.dx());
  EXPECT_NEAR(gs.min_slope, -peak, 1e-3 * peak);
  EXPECT_NEAR(gs.argmin, xs, 2.0 * w.dx());
}

TEST(ExtremalSlopes, MaxNonnegativeMinNonpositiveOnRandomFields) {
  std::mt19937 rng(17);
  std::normal_distribution<double> d;
  const auto g = wl::make_grid(3.0, 128);
  for (int trial = 0; trial < 50; ++trial) {
    wl::Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = d(rng);
    const auto s = wl::extremal_slopes(f);
    EXPECT_GE(s.max_slope, 0.0);
    EXPECT_LE(s.min_slope, 0.0);
  }
}

TEST(Functionals, SineValues) {
  const auto g = wl::make_grid(2.0 * pi, 2048, 0.0);
  const auto s = wl::Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_EQ(wl::invariant_I(wl::Field(g), 0.2), 0.0);
  EXPECT_EQ(wl::energy_E(wl::Field(g), 0.2), 0.0);
  EXPECT_NEAR(wl::invariant_I(s, 0.2), pi * (1.0 + 1.0 / 60.0), 1e-5);
  EXPECT_NEAR(wl::energy_E(s, 0.2), 2.0 * pi * (1.0 + 1.0 / 60.0), 1e-5);
}

TEST(Criterion, ZeroProfileRejectedAndModesNamed) {
  const auto g = wl::make_grid(4.0, 256);
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  EXPECT_THROW(wl::blowup_criterion(wl::Field(g), sc, wl::CriterionMode::SupZeta), std::invalid_argument);
  EXPECT_EQ(wl::criterion_mode_from_string("sup_slope0"), wl::CriterionMode::SupSlope);
  EXPECT_EQ(wl::to_string(wl::CriterionMode::SupZeta), "sup_zeta0");
  EXPECT_THROW(wl::criterion_mode_from_string("max"), std::invalid_argument);
}

TEST(Criterion, GaussianConstantAndBound) {
  const double A = 1.3;
  const auto g = wl::make_grid(8.0, 16384);
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  const auto z = wl::Profile::gaussian(A, 100.0).sample(g);
  const auto r = wl::blowup_criterion(z, sc, wl::CriterionMode::SupSlope);
  const double c0 = A * A * 101.0 * std::sqrt(pi / 200.0);
  EXPECT_NEAR(r.c0, c0, 1e-4 * c0);
  EXPECT_NEAR(r.rhs, rhs_oracle(r.c0, sc.eps, sc.mu), 1e-12 * r.rhs);
  EXPECT_NEAR(wl::criterion_rhs(r.c0, sc), r.rhs, 0.0);
  const double m0 = A * std::sqrt(200.0) * std::exp(-0.5);
  EXPECT_NEAR(r.m0, m0, 1e-4 * m0);
  EXPECT_NEAR(r.lhs, r.m0 * r.m0, 1e-12 * r.lhs);
  EXPECT_EQ(r.satisfied, r.lhs >= r.rhs);
  const auto rz = wl::blowup_criterion(z, sc, wl::CriterionMode::SupZeta);
  EXPECT_NEAR(rz.lhs, A * A, 1e-12);
  EXPECT_EQ(rz.t_upper, r.t_upper);
}

TEST(Criterion, BracketArithmetic) {
  const auto g = wl::make_grid(2.0 * pi, 4096, 0.0);
  const auto sc = wl::make_scaling(0.4, 0.2);
  const auto r = wl::blowup_criterion(wl::Field::sample(g, [](double x) { return std::sin(x); }), sc,
                                      wl::CriterionMode::SupSlope);
  EXPECT_NEAR(r.m0, 1.0, 1e-6);
  EXPECT_NEAR(r.t_lower, 0.625, 1e-5);
  EXPECT_NEAR(r.t_upper, 10.0, 1e-4);
  EXPECT_NEAR(r.t_upper / r.t_lower, 16.0, 1e-12);
}

TEST(CriterionProperties, ScaleCovarianceAndFixedRatio) {
  const auto g = wl::make_grid(8.0, 2048);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> amp(0.1, 3.0), width(5.0, 200.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double mu = trial % 2 ? 0.2 : 0.05;
    const auto sc = wl::make_scaling(std::sqrt(mu), mu);
    const auto z = wl::Profile::gaussian(amp(rng), width(rng)).sample(g);
    for (auto mode : {wl::CriterionMode::SupZeta, wl::CriterionMode::SupSlope}) {
      const auto a = wl::blowup_criterion(z, sc, mode);
      const auto b = wl::blowup_criterion(2.0 * z, sc, mode);
      EXPECT_NEAR(b.lhs, 4.0 * a.lhs, 1e-12 * b.lhs);
      EXPECT_NEAR(b.c0, 4.0 * a.c0, 1e-12 * b.c0);
      EXPECT_NEAR(b.rhs, wl::criterion_rhs(4.0 * a.c0, sc), 1e-12 * b.rhs);
      EXPECT_NEAR(a.t_upper / a.t_lower, 16.0, 1e-12);
      EXPECT_GE(a.c0, 0.0);
      EXPECT_GE(a.rhs, 0.0);
    }
  }
}

// (sup z)^2 <= |z| |z'| <= C0 / 2 while the bound exceeds (28/3) C0 mu^{-3/4}.
TEST(CriterionProperties, SupOfProfileModeNeverHoldsForSmallMu) {
  const auto g = wl::make_grid(8.0, 4096);
  for (double mu : {0.5, 0.2, 0.05}) {
    const auto sc = wl::make_scaling(std::sqrt(mu), mu);
    for (double A : {0.1, 1.0, 10.0, 100.0}) {
      for (double w : {1.0, 100.0, 2500.0}) {
        const auto r = wl::blowup_criterion(wl::Profile::gaussian(A, w).sample(g), sc, wl::CriterionMode::SupZeta);
        EXPECT_FALSE(r.satisfied);
        EXPECT_LE(r.lhs, 0.5 * r.c0 * (1.0 + 1e-2));
      }
    }
  }
}

TEST(SlopeBounds, ConstantMatchesFormula) {
  const double c0 = 2.5, e = 0.3;
  EXPECT_NEAR(wl::slope_bound_constant(c0, e),
              14.0 * c0 * e + 0.75 * e * e * std::pow(c0, 1.5) + 0.375 * std::pow(e, 3) * c0 * c0 + 8.0 * std::sqrt(c0),
              1e-12);
  EXPECT_EQ(wl::slope_bound_constant(0.0, e), 0.0);
}

TEST(SlopeBounds, RiccatiSolutionSaturatesBothBounds) {
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  const double m0 = 3.0;
  const double tb = 1.0 / (1.75 * sc.eps * m0);
  std::vector<double> t, m;
  for (int i = 0; i <= 400; ++i) {
    const double s = 0.9 * tb * i / 400.0;
    t.push_back(s);
    m.push_back(m0 / (1.0 - 1.75 * sc.eps * m0 * s));
  }
  const auto rep = wl::slope_ode_bounds_check(t, m, sc, 0.0, 1e-9);
  EXPECT_TRUE(rep.all_ok());
  EXPECT_EQ(rep.steps.size(), 399u);
  for (const auto& v : rep.steps) EXPECT_EQ(v.lower, v.upper);

  // Twice the Riccati growth violates the upper bound.
  std::vector<double> fast;
  for (double s : t) fast.push_back(m0 / (1.0 - 3.5 * sc.eps * m0 * s));
  std::vector<double> tt(t.begin(), t.begin() + 200);
  std::vector<double> ff(fast.begin(), fast.begin() + 200);
  const auto bad = wl::slope_ode_bounds_check(tt, ff, sc, 0.0, 1e-9);
  EXPECT_EQ(bad.passed, 0u);
  for (const auto& v : bad.steps) EXPECT_FALSE(v.upper_ok);
}

TEST(SlopeBounds, ConstantSeriesInsideWideBounds) {
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  std::vector<wl::SlopeRow> rows;
  for (int i = 0; i < 20; ++i) rows.push_back(row(0.01 * i, 0.5, -0.5));
  const auto rep = wl::slope_ode_bounds_check(rows, sc, 1.0);
  EXPECT_TRUE(rep.all_ok());
  EXPECT_DOUBLE_EQ(rep.fraction(), 1.0);
}

TEST(Classify, SyntheticSeries) {
  using wl::Termination;
  const auto plunge = synthetic({row(0, 1, -1), row(1, 2, -50), row(2, 3, -150)}, Termination::SlopeStop, -1);
  EXPECT_EQ(wl::classify_breaker(plunge).type, wl::Breaker::Plunging);
  EXPECT_FALSE(wl::classify_breaker(plunge).ambiguous);

  const auto surge = synthetic({row(0, 1, -1), row(1, 120, -3)}, Termination::SlopeStop, 1);
  EXPECT_EQ(wl::classify_breaker(surge).type, wl::Breaker::Surging);

  const auto both = synthetic({row(0, 1, -1), row(1, 70, -20), row(2, 120, -60)}, Termination::SlopeStop, 1);
  EXPECT_EQ(wl::classify_breaker(both).type, wl::Breaker::Surging);
  EXPECT_TRUE(wl::classify_breaker(both).ambiguous);

  const auto calm = synthetic({row(0, 1, -1), row(1, 1, -1)}, Termination::Completed, 0);
  EXPECT_EQ(wl::classify_breaker(calm).type, wl::Breaker::None);

  const auto blown = synthetic({row(0, 1, -1), row(1, 30, -80)}, Termination::Diverged, 0);
  EXPECT_EQ(wl::classify_breaker(blown).type, wl::Breaker::Plunging);
  EXPECT_TRUE(wl::classify_breaker(blown).ambiguous);
}

TEST(Classify, FirstCrossing) {
  const std::vector<wl::SlopeRow> rows{row(0, 1, -1), row(0.5, 20, -5), row(1, 200, -300)};
  EXPECT_FALSE(wl::first_crossing(rows, 1000.0).has_value());
  const auto c = wl::first_crossing(rows, 10.0);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->time, 0.5);
  EXPECT_EQ(c->sign, 1);
  EXPECT_EQ(wl::first_crossing(rows, 100.0)->sign, -1);
}

TEST(Drift, ExcludesCrossingRowAndWindowStopsAtSlopeLimit) {
  auto rows = std::vector<wl::SlopeRow>{row(0, 1, -1), row(1, 2, -1), row(2, 20, -1), row(3, 500, -1)};
  rows[1].invariant = 1.0 + 1e-6;
  rows[2].invariant = 1.01;
  rows[3].invariant = 7.0;
  const auto r = synthetic(rows, wl::Termination::SlopeStop, 1);
  EXPECT_NEAR(wl::invariant_drift(r), 0.01, 1e-12);
  const auto w = wl::invariant_drift_window(rows, 10.0);
  EXPECT_NEAR(w.drift, 1e-6, 1e-15);
  EXPECT_EQ(w.window_end, 1.0);
}

TEST(Canonical, CamassaHolmPlungesAndSurfaceSurgesUnderRefinement) {
  for (std::size_t n : {2048u, 4096u}) {
    const auto ch = wl::run(gaussian_run("ch", n));
    ASSERT_EQ(ch.termination, wl::Termination::SlopeStop) << n;
    EXPECT_EQ(wl::classify_breaker(ch).type, wl::Breaker::Plunging) << n;
    EXPECT_LT(ch.slope_series.back().min_slope, -ch.stop_threshold);

    const auto s = wl::run(gaussian_run("surface-q112", n));
    ASSERT_EQ(s.termination, wl::Termination::SlopeStop) << n;
    EXPECT_EQ(wl::classify_breaker(s).type, wl::Breaker::Surging) << n;
    EXPECT_GT(s.slope_series.back().max_slope, s.stop_threshold);
  }
}

TEST(Canonical, SurfaceMaxSlopeRisesToTermination) {
  const auto s = wl::run(gaussian_run("surface-q112", 2048));
  const auto& rows = s.slope_series;
  ASSERT_GT(rows.size(), 10u);
  // The last few rows before the stop grow monotonically.
  for (std::size_t i = rows.size() - 4; i < rows.size(); ++i) EXPECT_GT(rows[i].max_slope, rows[i - 1].max_slope);
  EXPECT_GT(rows.back().max_slope, 10.0 * rows.front().max_slope);
}

TEST(Canonical, LinearRunDoesNotBreak) {
  auto c = gaussian_run("ch", 2048);
  c.nonlinear = false;
  c.t_end = 1.0;
  const auto r = wl::run(c);
  EXPECT_EQ(r.termination, wl::Termination::Completed);
  EXPECT_EQ(wl::classify_breaker(r).type, wl::Breaker::None);
}

TEST(Analyze, ReportFieldsAndJson) {
  auto c = gaussian_run("surface-q112", 2048);
  c.stop_on_slope = 1e5;
  const auto r = wl::run(c);
  const auto z0 = c.profile.sample(c.grid);
  const auto rep = wl::analyze_breaking(r, z0, c.scaling, wl::CriterionMode::SupZeta);
  EXPECT_EQ(rep.verdict.type, wl::Breaker::Surging);
  ASSERT_TRUE(rep.detected_time.has_value());
  EXPECT_FALSE(rep.criterion.satisfied);
  EXPECT_FALSE(rep.bracket_ok.has_value());
  EXPECT_EQ(rep.criterion_other.mode, wl::CriterionMode::SupSlope);
  ASSERT_EQ(rep.threshold_sensitivity.size(), 3u);
  double prev = 0.0;
  for (const auto& [thr, t] : rep.threshold_sensitivity) {
    ASSERT_TRUE(t.has_value()) << thr;
    EXPECT_GE(*t, prev);
    prev = *t;
  }
  const auto j = wl::to_json(rep);
  for (const char* key : {"classification", "detected_time", "bracket", "bracket_ok", "criterion", "invariant_drift",
                          "threshold_sensitivity"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["classification"], "Surging");
  EXPECT_TRUE(j["bracket_ok"].is_null());
  EXPECT_TRUE(j["threshold_sensitivity"].contains("10000"));
  EXPECT_EQ(j["criterion"]["mode"], "sup_zeta0");

  // Thresholds above the stop level cannot be observed.
  const auto capped = wl::analyze_breaking(r, z0, c.scaling, wl::CriterionMode::SupZeta, {1e6});
  EXPECT_FALSE(capped.threshold_sensitivity.at(1e6).has_value());
}

TEST(Analyze, SmoothWindowConservesInvariant) {
  wl::RunConfig c;
  c.coeffs = wl::preset("surface-q112").to_double();
  c.scaling = wl::make_scaling(std::sqrt(0.2), 0.2);
  c.grid = wl::make_grid(4.0, 8192);
  c.t_end = 0.25;
  c.profile = wl::Profile::gaussian(0.1, 100.0);
  const auto r = wl::run(c);
  const auto w = wl::invariant_drift_window(r.slope_series);
  EXPECT_NEAR(w.window_end, c.t_end, 1e-12);
  EXPECT_LT(w.drift, 1e-4);
}
