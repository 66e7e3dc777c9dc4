#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace wavelab {

using Rational = boost::rational<std::int64_t>;

/// Parses "a", "-a/b" or a decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Dimensionless regime (eps, mu) together with the admissibility set
/// {mu in (0, mu0), eps <= M sqrt(mu)}.
struct Scaling {
  double eps = 0.0;
  double mu = 0.0;
  double mu0 = 1.0;
  double bigM = 1.0;
};

/// Throws std::invalid_argument naming the violated bound when (eps, mu) is
/// outside the admissibility set.
Scaling make_scaling(double eps, double mu, double mu0 = 1.0, double bigM = 1.0);

/// Coefficients of
///   u_t + u_x + 3/2 eps u u_x + eps^2 iota u^2 u_x + eps^3 kappa u^3 u_x
///       + mu (alpha u_xxx + beta u_xxt) = eps mu (gamma u u_xxx + delta u_x u_xx).
struct CoefficientSet {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double iota = 0.0;
  double kappa = 0.0;

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

/// Same coefficients held exactly. Classification predicates are equalities
/// and are only decided on this form.
struct ExactCoefficients {
  Rational alpha{0};
  Rational beta{0};
  Rational gamma{0};
  Rational delta{0};
  Rational iota{0};
  Rational kappa{0};

  CoefficientSet to_double() const;
  friend bool operator==(const ExactCoefficients&, const ExactCoefficients&) = default;
};

enum class FamilyKind { VelocityOneParam, VelocityTwoParam, Surface };

struct FamilyParam {
  FamilyKind kind = FamilyKind::VelocityOneParam;
  Rational p{0};       // p for velocity families, q for the surface family
  Rational theta2{1, 3};
  double theta = 0.0;  // sqrt(theta2)
  Rational lambda{0};  // (theta^2 - 1/3) / 2
};

FamilyParam make_family_param(FamilyKind kind, Rational p, Rational theta2 = Rational(1, 3));

ExactCoefficients coeffs_velocity_family(const Rational& p);
/// theta2 is theta squared; rejects theta2 outside [0, 1].
ExactCoefficients coeffs_velocity_two_param(const Rational& p, const Rational& theta2);
ExactCoefficients coeffs_surface_family(const Rational& q);
ExactCoefficients coeffs_for(const FamilyParam& family);

/// Floating overloads for callers that only have double parameters.
CoefficientSet coeffs_velocity_family(double p);
CoefficientSet coeffs_velocity_two_param(double p, double theta);
CoefficientSet coeffs_surface_family(double q);

enum class Classification { CamassaHolm, DegasperisProcesi, BBM, Generic, Illposed };

std::string_view to_string(Classification c);

Classification classify(const ExactCoefficients& c);
/// Same predicates with every equality tested to an absolute tolerance.
Classification classify(const CoefficientSet& c, double tol = 1e-12);

/// Constants mapping a solution of the family onto the standard CH or DP form.
struct TransformParams {
  double a = 0.0;
  double b = 0.0;
  double v = 0.0;
  double c = 0.0;
  double kappa_hat = 0.0;
  Classification target = Classification::CamassaHolm;
};

TransformParams standard_form_params(const ExactCoefficients& coeffs, const Scaling& scaling,
                                     double kappa_hat);

/// Named presets: "ch", "dp", "surface-q112", "velocity-a", "velocity-b",
/// "bbm(p)" with p a rational literal.
ExactCoefficients preset(std::string_view name);
std::vector<std::string> preset_names();

nlohmann::json to_json(const CoefficientSet& c);
CoefficientSet coefficients_from_json(const nlohmann::json& j);

}  // namespace wavelab
