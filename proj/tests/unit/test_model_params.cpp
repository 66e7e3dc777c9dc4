#include "wavelab/model_params.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace wl = wavelab;
using wl::Rational;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

void expect_abgd(const wl::ExactCoefficients& c, Rational a, Rational b, Rational g, Rational d) {
  EXPECT_EQ(c.alpha, a);
  EXPECT_EQ(c.beta, b);
  EXPECT_EQ(c.gamma, g);
  EXPECT_EQ(c.delta, d);
}

std::vector<Rational> random_rationals(std::size_t count, std::uint32_t seed, std::int64_t lo, std::int64_t hi) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::int64_t> num(lo, hi);
  std::uniform_int_distribution<std::int64_t> den(1, 97);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(num(rng), den(rng));
  return out;
}

}  // namespace

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(wl::parse_rational("3"), R(3));
  EXPECT_EQ(wl::parse_rational("-1/12"), R(-1, 12));
  EXPECT_EQ(wl::parse_rational("0.25"), R(1, 4));
  EXPECT_EQ(wl::parse_rational("-0.5"), R(-1, 2));
  EXPECT_EQ(wl::parse_rational(" 2/4 "), R(1, 2));
  EXPECT_THROW(wl::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(wl::parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(wl::parse_rational(""), std::invalid_argument);
  EXPECT_EQ(wl::to_string(R(-5, 12)), "-5/12");
  EXPECT_EQ(wl::to_string(R(4)), "4");
}

TEST(Scaling, AdmissibleSetIsEnforced) {
  EXPECT_NO_THROW(wl::make_scaling(std::sqrt(0.2), 0.2));
  try {
    wl::make_scaling(0.5, 0.2);
    FAIL() << "eps above M sqrt(mu) accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("admissible set"), std::string::npos);
  }
  EXPECT_THROW(wl::make_scaling(0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(wl::make_scaling(0.1, -0.1), std::invalid_argument);
  EXPECT_NO_THROW(wl::make_scaling(0.5, 6.0, 10.0, 1.0));
}

TEST(Coefficients, OneParameterReferenceSets) {
  expect_abgd(wl::coeffs_velocity_family(R(-1, 12)), R(-1, 12), R(-1, 4), R(-1, 24), R(-7, 12));
  expect_abgd(wl::coeffs_velocity_family(R(1, 6)), R(1, 6), R(0), R(-5, 12), R(-41, 24));
  expect_abgd(wl::coeffs_velocity_family(R(-5, 12)), R(-5, 12), R(-7, 12), R(11, 24), R(11, 12));
}

TEST(Coefficients, TwoParameterReferenceSets) {
  const auto ch = wl::coeffs_velocity_two_param(R(-1, 3), R(1, 2));
  expect_abgd(ch, R(-1, 4), R(-5, 12), R(5, 24), R(5, 12));
  EXPECT_EQ(wl::classify(ch), wl::Classification::CamassaHolm);

  const auto dp = wl::coeffs_velocity_two_param(R(-77, 216), R(23, 36));
  expect_abgd(dp, R(-11, 54), R(-10, 27), R(5, 36), R(5, 12));
  EXPECT_EQ(wl::classify(dp), wl::Classification::DegasperisProcesi);

  EXPECT_EQ(wl::classify(wl::coeffs_velocity_family(R(-5, 12))), wl::Classification::Generic);
  EXPECT_EQ(wl::classify(wl::coeffs_velocity_family(R(1, 6))), wl::Classification::Generic);
}

TEST(Coefficients, SurfaceFamily) {
  const auto s = wl::coeffs_surface_family(R(1, 12));
  expect_abgd(s, R(1, 12), R(-1, 12), R(-7, 24), R(-7, 12));
  EXPECT_EQ(s.iota, R(-3, 8));
  EXPECT_EQ(s.kappa, R(3, 16));
}

TEST(Coefficients, ThetaOutsideUnitIntervalRejected) {
  EXPECT_THROW(wl::coeffs_velocity_two_param(R(0), R(3, 2)), std::invalid_argument);
  EXPECT_THROW(wl::coeffs_velocity_two_param(R(0), R(-1, 4)), std::invalid_argument);
  EXPECT_NO_THROW(wl::coeffs_velocity_two_param(R(0), R(1)));
  EXPECT_NO_THROW(wl::coeffs_velocity_two_param(R(0), R(0)));
}

TEST(Coefficients, TwoParamAtThetaSquaredOneThirdIsOneParam) {
  for (const Rational& p : random_rationals(50, 11, -60, 60)) {
    EXPECT_EQ(wl::coeffs_velocity_two_param(p, R(1, 3)), wl::coeffs_velocity_family(p));
  }
}

// Identities used to map the family onto the BBM-accurate expansion.
TEST(CoefficientProperties, StructuralIdentitiesHoldExactly) {
  const auto ps = random_rationals(100, 7, -200, 200);
  const auto t2s = random_rationals(100, 8, 0, 97);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Rational& p = ps[i];
    const auto one = wl::coeffs_velocity_family(p);
    EXPECT_EQ(one.beta - one.alpha, R(-1, 6));
    EXPECT_EQ(one.gamma + R(3, 2) * one.alpha, R(-1, 6));
    EXPECT_EQ((one.delta + R(3) * one.alpha - one.gamma) / R(2), R(-19, 48));
    EXPECT_EQ(one.delta - R(3) * one.gamma, R(-11, 24));

    Rational t2 = t2s[i];
    if (t2 > R(1)) t2 = R(1) / t2;
    const Rational lambda = (t2 - R(1, 3)) / R(2);
    const auto two = wl::coeffs_velocity_two_param(p, t2);
    EXPECT_EQ(two.beta - two.alpha, R(-1, 6));
    EXPECT_EQ(two.gamma + R(3, 2) * two.alpha, R(-1, 6));
    // The shift by lambda enters alpha with weight 1 and gamma, delta with -3/2.
    EXPECT_EQ((two.delta + R(3) * two.alpha - two.gamma) / R(2), R(-19, 48) + R(3, 2) * lambda);
  }
}

TEST(CoefficientProperties, OneParamNeverDegasperisProcesi) {
  for (const Rational& p : random_rationals(200, 3, -500, 500)) {
    EXPECT_NE(wl::classify(wl::coeffs_velocity_family(p)), wl::Classification::DegasperisProcesi);
  }
}

TEST(CoefficientProperties, IllposedExactlyWhenBetaPositive) {
  for (const Rational& p : random_rationals(200, 5, -300, 300)) {
    const auto c = wl::coeffs_velocity_family(p);
    EXPECT_EQ(wl::classify(c) == wl::Classification::Illposed, c.beta > R(0)) << wl::to_string(p);
  }
}

TEST(CoefficientProperties, FloatingClassificationAgreesWithExact) {
  auto samples = random_rationals(100, 9, -100, 100);
  samples.push_back(R(-1, 3));
  for (const Rational& p : samples) {
    for (const Rational& t2 : {R(1, 3), R(1, 2), R(23, 36), R(0), R(1)}) {
      const auto exact = wl::coeffs_velocity_two_param(p, t2);
      EXPECT_EQ(wl::classify(exact.to_double(), 1e-12), wl::classify(exact));
    }
  }
  const auto ch = wl::coeffs_velocity_two_param(-1.0 / 3.0, std::sqrt(0.5));
  EXPECT_EQ(wl::classify(ch, 1e-12), wl::Classification::CamassaHolm);
}

TEST(Classification, BBM) {
  const auto c = wl::preset("bbm(-1/3)");
  EXPECT_EQ(c.alpha - c.beta, R(1, 6));
  EXPECT_EQ(wl::classify(c), wl::Classification::BBM);
  EXPECT_EQ(wl::classify(wl::preset("bbm(-1/3)").to_double()), wl::Classification::BBM);
}

TEST(StandardForm, CamassaHolmConstants) {
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  const auto t = wl::standard_form_params(wl::preset("ch"), sc, 1.0);
  // beta mu = -1/12, v = alpha/beta = 3/5.
  EXPECT_NEAR(t.b, std::sqrt(12.0), 1e-12);
  EXPECT_NEAR(t.v, 0.6, 1e-15);
  EXPECT_NEAR(t.c, std::sqrt(12.0) * 0.4, 1e-12);
  EXPECT_NEAR(t.a, 2.0 / std::sqrt(0.2) * 0.4, 1e-12);
  EXPECT_EQ(t.target, wl::Classification::CamassaHolm);
}

TEST(StandardForm, DegasperisProcesiUsesEightThirds) {
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  const auto c = wl::preset("dp");
  const auto t = wl::standard_form_params(c, sc, 2.0);
  const double v = wl::to_double(c.alpha / c.beta);
  EXPECT_NEAR(t.v, v, 1e-15);
  EXPECT_NEAR(t.a, 8.0 / 3.0 / (sc.eps * 2.0) * (1.0 - v), 1e-12);
  EXPECT_NEAR(t.b, std::sqrt(-1.0 / (wl::to_double(c.beta) * 0.2)), 1e-12);
  EXPECT_EQ(t.target, wl::Classification::DegasperisProcesi);
}

TEST(StandardForm, RejectsOtherClassesAndZeroKappa) {
  const auto sc = wl::make_scaling(std::sqrt(0.2), 0.2);
  EXPECT_THROW(wl::standard_form_params(wl::preset("velocity-a"), sc, 1.0), std::invalid_argument);
  EXPECT_THROW(wl::standard_form_params(wl::preset("ch"), sc, 0.0), std::invalid_argument);
}

TEST(Presets, NamesResolveAndUnknownListsThem) {
  for (const auto& name : wl::preset_names()) {
    if (name.find('(') != std::string::npos) continue;
    EXPECT_NO_THROW(wl::preset(name)) << name;
  }
  EXPECT_EQ(wl::preset("velocity-a"), wl::coeffs_velocity_family(R(-1, 12)));
  EXPECT_EQ(wl::preset("velocity-b"), wl::coeffs_velocity_family(R(1, 6)));
  try {
    wl::preset("kdv");
    FAIL();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("surface-q112"), std::string::npos);
    EXPECT_NE(msg.find("ch"), std::string::npos);
  }
}

TEST(CoefficientJson, RoundTripAndOptionalCubicTerms) {
  const auto c = wl::preset("surface-q112").to_double();
  EXPECT_EQ(wl::coefficients_from_json(wl::to_json(c)), c);
  const auto j = nlohmann::json::parse(R"({"alpha": 1, "beta": -0.5, "gamma": 0, "delta": 0.25})");
  const auto d = wl::coefficients_from_json(j);
  EXPECT_EQ(d.iota, 0.0);
  EXPECT_EQ(d.kappa, 0.0);
  EXPECT_THROW(wl::coefficients_from_json(nlohmann::json::parse(R"({"alpha": 1})")), std::invalid_argument);
}
