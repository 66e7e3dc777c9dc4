#include "wavelab/model_params.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavelab {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a rational literal: '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(trim(s.substr(slash + 1)), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(trim(s.substr(0, slash)), text), den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    auto frac = s.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    auto head = s.substr(0, dot);
    const bool negative = !head.empty() && head.front() == '-';
    if (negative || (!head.empty() && head.front() == '+')) head.remove_prefix(1);
    const std::int64_t whole = head.empty() ? 0 : parse_int(head, text);
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac, text);
    Rational r(whole * scale + part, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(s, text));
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

Scaling make_scaling(double eps, double mu, double mu0, double bigM) {
  if (!(eps > 0.0) || !(mu > 0.0) || !(mu0 > 0.0) || !(bigM > 0.0)) {
    throw std::invalid_argument("scaling parameters eps, mu, mu0, M must all be positive");
  }
  if (!(mu < mu0)) {
    std::ostringstream os;
    os << "(eps, mu) outside admissible set P = {mu in (0, mu0), eps <= M sqrt(mu)}: mu = " << mu
       << " is not below mu0 = " << mu0;
    throw std::invalid_argument(os.str());
  }
  const double bound = bigM * std::sqrt(mu);
  if (eps > bound * (1.0 + 1e-14)) {
    std::ostringstream os;
    os << "(eps, mu) outside admissible set P = {mu in (0, mu0), eps <= M sqrt(mu)}: eps = " << eps
       << " exceeds M sqrt(mu) = " << bound;
    throw std::invalid_argument(os.str());
  }
  return Scaling{eps, mu, mu0, bigM};
}

CoefficientSet ExactCoefficients::to_double() const {
  return CoefficientSet{wavelab::to_double(alpha), wavelab::to_double(beta),
                        wavelab::to_double(gamma), wavelab::to_double(delta),
                        wavelab::to_double(iota),  wavelab::to_double(kappa)};
}

FamilyParam make_family_param(FamilyKind kind, Rational p, Rational theta2) {
  if (theta2 < Rational(0) || theta2 > Rational(1)) {
    throw std::invalid_argument("theta must lie in [0, 1]; got theta^2 = " + to_string(theta2));
  }
  FamilyParam f;
  f.kind = kind;
  f.p = p;
  f.theta2 = theta2;
  f.theta = std::sqrt(to_double(theta2));
  f.lambda = (theta2 - Rational(1, 3)) / 2;
  return f;
}

ExactCoefficients coeffs_velocity_family(const Rational& p) {
  return coeffs_velocity_two_param(p, Rational(1, 3));
}

ExactCoefficients coeffs_velocity_two_param(const Rational& p, const Rational& theta2) {
  const auto lambda = make_family_param(FamilyKind::VelocityTwoParam, p, theta2).lambda;
  ExactCoefficients c;
  c.alpha = p + lambda;
  c.beta = p - Rational(1, 6) + lambda;
  c.gamma = Rational(-3, 2) * p - Rational(1, 6) - Rational(3, 2) * lambda;
  c.delta = Rational(-9, 2) * p - Rational(23, 24) - Rational(3, 2) * lambda;
  return c;
}

ExactCoefficients coeffs_surface_family(const Rational& q) {
  ExactCoefficients c;
  c.alpha = q;
  c.beta = q - Rational(1, 6);
  c.gamma = Rational(-3, 2) * q - Rational(1, 6);
  c.delta = Rational(-9, 2) * q - Rational(5, 24);
  c.iota = Rational(-3, 8);
  c.kappa = Rational(3, 16);
  return c;
}

ExactCoefficients coeffs_for(const FamilyParam& family) {
  switch (family.kind) {
    case FamilyKind::VelocityOneParam: return coeffs_velocity_family(family.p);
    case FamilyKind::VelocityTwoParam: return coeffs_velocity_two_param(family.p, family.theta2);
    case FamilyKind::Surface: return coeffs_surface_family(family.p);
  }
  throw std::logic_error("unknown family kind");
}

CoefficientSet coeffs_velocity_family(double p) { return coeffs_velocity_two_param(p, std::sqrt(1.0 / 3.0)); }

CoefficientSet coeffs_velocity_two_param(double p, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  const double lambda = 0.5 * (theta * theta - 1.0 / 3.0);
  return CoefficientSet{p + lambda,
                        p - 1.0 / 6.0 + lambda,
                        -1.5 * p - 1.0 / 6.0 - 1.5 * lambda,
                        -4.5 * p - 23.0 / 24.0 - 1.5 * lambda,
                        0.0,
                        0.0};
}

CoefficientSet coeffs_surface_family(double q) {
  return CoefficientSet{q, q - 1.0 / 6.0, -1.5 * q - 1.0 / 6.0, -4.5 * q - 5.0 / 24.0, -3.0 / 8.0, 3.0 / 16.0};
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::CamassaHolm: return "CamassaHolm";
    case Classification::DegasperisProcesi: return "DegasperisProcesi";
    case Classification::BBM: return "BBM";
    case Classification::Generic: return "Generic";
    case Classification::Illposed: return "Illposed";
  }
  return "?";
}

namespace {

// Shared predicate logic; Eq decides equality of two values.
template <class T, class Eq, class Less>
Classification classify_impl(const T& alpha, const T& beta, const T& gamma, const T& delta,
                             const T& iota, const T& kappa, Eq eq, Less less) {
  const T zero(0);
  if (less(zero, beta)) return Classification::Illposed;
  const bool ch_dp_base = less(beta, zero) && !eq(alpha, beta);
  if (ch_dp_base && eq(beta, T(-2) * gamma) && eq(delta, T(2) * gamma)) {
    return Classification::CamassaHolm;
  }
  if (ch_dp_base && eq(T(3) * beta, T(-8) * gamma) && eq(delta, T(3) * gamma)) {
    return Classification::DegasperisProcesi;
  }
  if (eq(gamma, zero) && eq(delta, zero) && eq(iota, zero) && eq(kappa, zero) &&
      eq(T(6) * (alpha - beta), T(1))) {
    return Classification::BBM;
  }
  return Classification::Generic;
}

}  // namespace

Classification classify(const ExactCoefficients& c) {
  return classify_impl(
      c.alpha, c.beta, c.gamma, c.delta, c.iota, c.kappa,
      [](const Rational& a, const Rational& b) { return a == b; },
      [](const Rational& a, const Rational& b) { return a < b; });
}

Classification classify(const CoefficientSet& c, double tol) {
  return classify_impl(
      c.alpha, c.beta, c.gamma, c.delta, c.iota, c.kappa,
      [tol](double a, double b) { return std::abs(a - b) <= tol; },
      [tol](double a, double b) { return a < b - tol; });
}

TransformParams standard_form_params(const ExactCoefficients& coeffs, const Scaling& scaling,
                                     double kappa_hat) {
  const auto kind = classify(coeffs);
  if (kind != Classification::CamassaHolm && kind != Classification::DegasperisProcesi) {
    throw std::invalid_argument("standard form requires a Camassa-Holm or Degasperis-Procesi "
                                "coefficient set; got " + std::string(to_string(kind)));
  }
  if (kappa_hat == 0.0) throw std::invalid_argument("kappa_hat must be nonzero");
  const Rational v_exact = coeffs.alpha / coeffs.beta;
  if (v_exact == Rational(1)) throw std::invalid_argument("degenerate transform: v = 1");

  TransformParams t;
  t.target = kind;
  t.kappa_hat = kappa_hat;
  t.v = to_double(v_exact);
  t.b = std::sqrt(-1.0 / (to_double(coeffs.beta) * scaling.mu));
  t.c = t.b * (1.0 - t.v) / kappa_hat;
  const double prefactor = kind == Classification::CamassaHolm ? 2.0 : 8.0 / 3.0;
  t.a = prefactor / (scaling.eps * kappa_hat) * (1.0 - t.v);
  return t;
}

ExactCoefficients preset(std::string_view name) {
  if (name == "ch") return coeffs_velocity_two_param(Rational(-1, 3), Rational(1, 2));
  if (name == "dp") return coeffs_velocity_two_param(Rational(-77, 216), Rational(23, 36));
  if (name == "surface-q112") return coeffs_surface_family(Rational(1, 12));
  if (name == "velocity-a") return coeffs_velocity_family(Rational(-1, 12));
  if (name == "velocity-b") return coeffs_velocity_family(Rational(1, 6));
  if (name.starts_with("bbm(") && name.ends_with(")")) {
    const auto p = parse_rational(name.substr(4, name.size() - 5));
    ExactCoefficients c;
    c.alpha = p;
    c.beta = p - Rational(1, 6);
    return c;
  }
  std::string msg = "unknown preset '" + std::string(name) + "'; valid presets:";
  for (const auto& n : preset_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

std::vector<std::string> preset_names() {
  return {"ch", "dp", "surface-q112", "bbm(p)", "velocity-a", "velocity-b"};
}

nlohmann::json to_json(const CoefficientSet& c) {
  return nlohmann::json{{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma},
                        {"delta", c.delta}, {"iota", c.iota}, {"kappa", c.kappa}};
}

CoefficientSet coefficients_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("coefficients must be a JSON object");
  CoefficientSet c;
  auto read = [&j](const char* key, double& out, bool required) {
    if (!j.contains(key)) {
      if (required) throw std::invalid_argument(std::string("coefficients: missing field '") + key + "'");
      return;
    }
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("coefficients: field '") + key + "' must be a number");
    out = j.at(key).get<double>();
  };
  read("alpha", c.alpha, true);
  read("beta", c.beta, true);
  read("gamma", c.gamma, true);
  read("delta", c.delta, true);
  read("iota", c.iota, false);
  read("kappa", c.kappa, false);
  return c;
}

}  // namespace wavelab
