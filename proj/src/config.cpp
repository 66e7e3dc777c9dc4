#include "wavelab/io/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wavelab::io {

namespace {

using json = nlohmann::json;

// Typed access to one JSON object with strict key checking.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("", "must be a JSON object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("config field '" + path(key) + "' " + what);
  }

  std::string path(const std::string& key) const {
    if (key.empty()) return where_.empty() ? "<root>" : where_;
    return where_.empty() ? key : where_ + "." + key;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    if (!has(key)) fail(key, "is required");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) fail(key, "must be a number");
    return v.get<double>();
  }

  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "must be a nonnegative integer");
    return v.get<std::size_t>();
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  std::string text(const std::string& key, const std::string& fallback) { return has(key) ? text(key) : fallback; }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) fail(key, "must be true or false");
    return j_.at(key).get<bool>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) fail(key, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(key, "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Rational rational(const std::string& key, Rational fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    } catch (const std::exception& e) {
      fail(key, std::string("is not a rational number: ") + e.what());
    }
    fail(key, "must be an integer or a string such as \"-1/12\"");
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(it.key(), "is not recognised");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Profile parse_profile(const json& j, const std::string& where) {
  Fields f(j, where);
  Profile p;
  const std::string kind = f.text("kind", "gaussian");
  if (kind == "gaussian") p.kind = Profile::Kind::Gaussian;
  else if (kind == "sech2") p.kind = Profile::Kind::Sech2;
  else if (kind == "sine") p.kind = Profile::Kind::Sine;
  else if (kind == "custom") p.kind = Profile::Kind::Custom;
  else f.fail("kind", "must be one of gaussian, sech2, sine, custom; got '" + kind + "'");
  p.amplitude = f.number("amplitude", 1.0);
  p.width = f.number("width", 100.0);
  p.center = f.number("center", 0.0);
  if (f.has("mode")) {
    const json& m = j.at("mode");
    if (!m.is_number_integer()) f.fail("mode", "must be an integer");
    p.mode = m.get<int>();
  }
  if (p.kind == Profile::Kind::Custom) p.values = f.numbers("values");
  f.finish();
  if (!(p.width > 0.0) && (p.kind == Profile::Kind::Gaussian || p.kind == Profile::Kind::Sech2)) {
    f.fail("width", "must be positive");
  }
  return p;
}

Grid parse_grid(const json& j, const std::string& where) {
  Fields f(j, where);
  const double length = f.number("length");
  const std::size_t n = f.count("n", 0);
  if (n == 0) f.fail("n", "is required and must be positive");
  const double origin = f.number("origin", -0.5 * length);
  f.finish();
  try {
    return make_grid(length, n, origin);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config field '") + f.path("") + "' " + e.what());
  }
}

double parse_eps(const json& v, double mu, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (s == "sqrt(mu)") return std::sqrt(mu);
  }
  throw ConfigError("config field '" + where + "' must be a number or \"sqrt(mu)\"");
}

Scaling parse_scaling(const json& j, const std::string& where, json* eps_entry) {
  Fields f(j, where);
  const double mu = f.number("mu");
  const json& e = f.raw("eps");
  const double eps = parse_eps(e, mu, f.path("eps"));
  if (eps_entry) *eps_entry = e;
  const double mu0 = f.number("mu0", 1.0);
  const double bigM = f.number("M", 1.0);
  f.finish();
  try {
    return make_scaling(eps, mu, mu0, bigM);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("config field '") + f.path("") + "': " + ex.what());
  }
}

SnapshotPolicy parse_snapshots(const json& j, const std::string& where) {
  Fields f(j, where);
  SnapshotPolicy s;
  if (f.has("times")) s.times = f.numbers("times");
  s.spread = f.count("count", s.times.empty() ? 9 : 0);
  f.finish();
  if (!s.times.empty() && s.spread != 0) f.fail("count", "cannot be combined with 'times'");
  return s;
}

ExperimentSpec parse_experiment_fields(Fields& f, const json& j, bool need_name) {
  ExperimentSpec spec;
  spec.name = need_name ? f.text("name") : f.text("name", "run");
  if (spec.name.empty() || spec.name.find('/') != std::string::npos) f.fail("name", "must be a plain directory name");

  const bool has_preset = f.has("preset");
  const bool has_coeffs = f.has("coefficients");
  if (has_preset == has_coeffs) f.fail("preset", "exactly one of 'preset' and 'coefficients' must be given");
  spec.run.coeffs = resolve_coefficients(j, spec.preset);

  spec.run.scaling = parse_scaling(f.raw("scaling"), f.path("scaling"), &spec.eps_entry);
  spec.run.grid = parse_grid(f.raw("grid"), f.path("grid"));

  {
    Fields t(f.raw("time"), f.path("time"));
    spec.run.t_end = t.number("t_end");
    if (t.has("dt")) {
      const json& dt = j.at("time").at("dt");
      if (dt.is_string() && dt.get<std::string>() == "auto") {
        spec.run.dt = 0.0;
      } else if (dt.is_number() && dt.get<double>() > 0.0) {
        spec.run.dt = dt.get<double>();
        spec.dt_policy = "explicit";
      } else {
        t.fail("dt", "must be a positive number or \"auto\"");
      }
    }
    t.finish();
    if (!(spec.run.t_end >= 0.0)) t.fail("t_end", "must be nonnegative");
  }

  spec.run.snapshots = f.has("snapshots") ? parse_snapshots(j.at("snapshots"), f.path("snapshots")) : SnapshotPolicy{{}, 9};
  spec.run.profile = f.has("profile") ? parse_profile(j.at("profile"), f.path("profile")) : Profile{};
  spec.run.asselin = f.number("asselin", 0.0);
  spec.run.stop_on_slope = f.number("stop_on_slope", 1e4);
  spec.run.nonlinear = f.flag("nonlinear", true);

  if (f.has("analysis")) {
    Fields a(j.at("analysis"), f.path("analysis"));
    spec.breaking_report = a.flag("breaking", true);
    try {
      spec.criterion_mode = criterion_mode_from_string(a.text("criterion_mode", "sup_zeta0"));
    } catch (const std::invalid_argument& e) {
      a.fail("criterion_mode", e.what());
    }
    if (a.has("sensitivity")) spec.sensitivity = a.numbers("sensitivity");
    a.finish();
  }
  try {
    validate(spec.run);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return spec;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < upto; ++i) line += text[i] == '\n';
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
}

CoefficientSet resolve_coefficients(const json& j, std::optional<std::string>& preset_out) {
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) throw ConfigError("config field 'preset' must be a string");
    const std::string name = j.at("preset").get<std::string>();
    try {
      const auto c = preset(name);
      preset_out = name;
      return c.to_double();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  try {
    return coefficients_from_json(j.at("coefficients"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config field 'coefficients': ") + e.what());
  }
}

ExperimentSpec parse_experiment(const json& j) {
  Fields f(j, "");
  ExperimentSpec spec = parse_experiment_fields(f, j, true);
  f.finish();
  return spec;
}

FamilyName family_from_string(const std::string& s) {
  if (s == "one-param") return FamilyName::OneParam;
  if (s == "two-param") return FamilyName::TwoParam;
  if (s == "surface") return FamilyName::Surface;
  throw ConfigError("family must be one of one-param, two-param, surface; got '" + s + "'");
}

std::string to_string(FamilyName f) {
  switch (f) {
    case FamilyName::OneParam: return "one-param";
    case FamilyName::TwoParam: return "two-param";
    case FamilyName::Surface: return "surface";
  }
  return "?";
}

ExactCoefficients family_coefficients(FamilyName family, const Rational& p, const Rational& theta2) {
  switch (family) {
    case FamilyName::OneParam: return coeffs_velocity_family(p);
    case FamilyName::TwoParam: return coeffs_velocity_two_param(p, theta2);
    case FamilyName::Surface: return coeffs_surface_family(p);
  }
  throw std::logic_error("unknown family");
}

ResidualStudySpec parse_residual_study(const json& j) {
  Fields f(j, "");
  ResidualStudySpec s;
  s.name = f.text("name", "residual_study");
  s.family = family_from_string(f.text("family", "one-param"));
  if (s.family == FamilyName::Surface) f.fail("family", "must be a velocity family for the residual study");
  s.p = f.rational("p", Rational(-1, 12));
  s.theta2 = f.rational("theta2", Rational(1, 3));
  try {
    s.setup.coeffs = family_coefficients(s.family, s.p, s.theta2).to_double();
  } catch (const std::invalid_argument& e) {
    f.fail("theta2", e.what());
  }
  s.setup.mu_list = f.numbers("mu_list");
  if (s.setup.mu_list.size() < 3) {
    f.fail("mu_list", "needs >= 3 points for an order fit; got " + std::to_string(s.setup.mu_list.size()));
  }
  for (double mu : s.setup.mu_list) {
    if (!(mu > 0.0 && mu < 1.0)) f.fail("mu_list", "entries must lie in (0, 1)");
  }
  if (f.has("profile")) s.setup.profile = parse_profile(j.at("profile"), "profile");
  if (f.has("grid")) {
    const Grid g = parse_grid(j.at("grid"), "grid");
    s.setup.length = g.length;
    s.setup.n = g.n;
  }
  s.setup.t_probe = f.number("t_probe", 0.5);
  if (!(s.setup.t_probe >= 0.0)) f.fail("t_probe", "must be nonnegative");
  if (f.has("dt")) {
    const json& dt = j.at("dt");
    if (dt.is_string() && dt.get<std::string>() == "auto") s.setup.dt = 0.0;
    else if (dt.is_number() && dt.get<double>() > 0.0) s.setup.dt = dt.get<double>();
    else f.fail("dt", "must be a positive number or \"auto\"");
  }
  s.setup.eps_factor = f.number("eps_factor", 1.0);
  s.round_trip = f.flag("round_trip", false);
  try {
    s.depth_mode = depth_mode_from_string(f.text("depth_mode", "free-surface"));
  } catch (const std::invalid_argument& e) {
    f.fail("depth_mode", e.what());
  }
  f.finish();
  return s;
}

SweepSpec parse_sweep(const json& j) {
  Fields f(j, "");
  SweepSpec s;
  s.name = f.text("name", "sweep");
  s.amplitudes = f.numbers("amplitudes");
  s.mu_list = f.numbers("mu_list");
  if (s.amplitudes.empty() || s.mu_list.empty()) f.fail("amplitudes", "and 'mu_list' must both be non-empty");
  Fields b(f.raw("base"), "base");
  s.base = parse_experiment_fields(b, j.at("base"), false);
  b.finish();
  s.base.name = s.name;
  f.finish();
  return s;
}

}  // namespace wavelab::io
