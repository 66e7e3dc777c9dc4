#include "wavelab/io/commands.hpp"

#include "wavelab/format.hpp"
#include "wavelab/io/config.hpp"
#include "wavelab/io/output.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>
#include <vector>

namespace wavelab::io {

using json = nlohmann::json;
using wavelab::to_string;

namespace {

struct RunOutcome {
  RunResult result;
  std::optional<BreakingReport> breaking;
};

RunOutcome execute(const ExperimentSpec& spec) {
  RunOutcome o;
  o.result = run(spec.run);
  if (spec.breaking_report) {
    const Field zeta0 = spec.run.profile.sample(spec.run.grid);
    if (zeta0.max_abs() > 0.0 && diff(zeta0, 1).max_abs() > 0.0) {
      o.breaking = analyze_breaking(o.result, zeta0, spec.run.scaling, spec.criterion_mode, spec.sensitivity);
    }
  }
  return o;
}

std::string opt_text(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

int cmd_run(const std::filesystem::path& config, const std::filesystem::path& out_dir, std::ostream& out,
            std::ostream& err) {
  ExperimentSpec spec;
  try {
    spec = parse_experiment(read_json_file(config));
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    const RunOutcome o = execute(spec);
    const auto dir = out_dir / spec.name;
    write_run_outputs(dir, spec, o.result, o.breaking);
    out << spec.name << ": " << to_string(o.result.termination) << " at t = " << format_double(o.result.termination_time)
        << " (" << o.result.steps << " steps, dt = " << format_double(o.result.dt) << ")\n";
    if (o.breaking) {
      out << "classification: " << to_string(o.breaking->verdict.type)
          << (o.breaking->verdict.ambiguous ? " (ambiguous)" : "") << '\n';
    }
    out << "output: " << dir.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

int cmd_check_coeffs(const CheckCoeffsArgs& a, std::ostream& out, std::ostream& err) {
  ExactCoefficients c;
  std::string param_desc;
  try {
    const FamilyName fam = family_from_string(a.family);
    const std::optional<std::string>& raw = fam == FamilyName::Surface ? a.q : a.p;
    if (!raw) {
      err << "error: family '" << a.family << "' needs " << (fam == FamilyName::Surface ? "-q" : "-p") << '\n';
      return kConfigError;
    }
    const Rational param = parse_rational(*raw);
    const Rational theta2 = parse_rational(a.theta2);
    if (fam == FamilyName::OneParam && theta2 != Rational(1, 3)) {
      err << "error: --theta2 applies to the two-param family only\n";
      return kConfigError;
    }
    c = family_coefficients(fam, param, theta2);
    param_desc = (fam == FamilyName::Surface ? "q = " : "p = ") + to_string(param);
    if (fam == FamilyName::TwoParam) param_desc += ", theta^2 = " + to_string(theta2);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  const Classification cls = classify(c);
  std::string verdict;
  if (c.beta < Rational(0)) verdict = "well-posed (beta < 0)";
  else if (c.beta == Rational(0)) verdict = "Illposed-for-solver (beta = 0; the scheme requires beta < 0)";
  else verdict = "Illposed (beta > 0)";

  json j{{"family", a.family}, {"parameters", param_desc}, {"classification", std::string(to_string(cls))}, {"verdict", verdict}};
  const std::pair<const char*, const Rational*> rows[] = {{"alpha", &c.alpha}, {"beta", &c.beta}, {"gamma", &c.gamma},
                                                          {"delta", &c.delta}, {"iota", &c.iota}, {"kappa", &c.kappa}};
  for (const auto& [name, value] : rows) j["coefficients"][name] = json{{"exact", to_string(*value)}, {"value", to_double(*value)}};

  if (cls == Classification::CamassaHolm || cls == Classification::DegasperisProcesi) {
    try {
      const double eps = a.eps.value_or(std::sqrt(a.mu));
      const Scaling sc = make_scaling(eps, a.mu, std::max(1.0, 2.0 * a.mu), std::max(1.0, eps / std::sqrt(a.mu)));
      const TransformParams t = standard_form_params(c, sc, a.kappa_hat);
      j["standard_form"] = {{"kappa_hat", t.kappa_hat}, {"mu", sc.mu}, {"eps", sc.eps},
                            {"a", t.a}, {"b", t.b}, {"v", t.v}, {"c", t.c}};
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kConfigError;
    }
  }

  if (a.json) {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "family: " << a.family << " (" << param_desc << ")\n";
  for (const auto& [name, value] : rows) {
    out << "  " << std::left << std::setw(6) << name << ' ' << std::setw(10) << to_string(*value) << ' '
        << format_double(to_double(*value)) << '\n';
  }
  out << "classification: " << to_string(cls) << '\n';
  out << "verdict: " << verdict << '\n';
  if (j.contains("standard_form")) {
    const auto& s = j["standard_form"];
    out << "standard form (kappa_hat = " << format_double(s["kappa_hat"].get<double>())
        << ", mu = " << format_double(s["mu"].get<double>()) << ", eps = " << format_double(s["eps"].get<double>())
        << "): a = " << format_double(s["a"].get<double>()) << ", b = " << format_double(s["b"].get<double>())
        << ", v = " << format_double(s["v"].get<double>()) << ", c = " << format_double(s["c"].get<double>()) << '\n';
  }
  return kOk;
}

int cmd_residual_study(const std::filesystem::path& config, const std::filesystem::path& out_dir, bool self_test,
                       std::ostream& out, std::ostream& err) {
  ResidualStudySpec spec;
  try {
    spec = parse_residual_study(read_json_file(config));
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  const auto dir = out_dir / spec.name;
  try {
    std::filesystem::create_directories(dir);
    if (self_test) {
      OrderStudy synth;
      for (double mu : spec.setup.mu_list) {
        ResidualReport r;
        r.mu = mu;
        r.eps = spec.setup.eps_factor * std::sqrt(mu);
        r.r1_l2 = r.r1_sup = r.r2_l2 = r.r2_sup = 0.75 * mu * mu;
        synth.fitted.push_back(0.75 * mu * mu);
        synth.points.push_back(r);
      }
      synth.fit = fit_power(spec.setup.mu_list, synth.fitted);
      json j = to_json(synth);
      j["synthetic"] = true;
      write_json_file(dir / "order.json", j);
      out << "synthetic exponent: " << format_double(synth.fit.exponent) << '\n';
      return kOk;
    }
    OrderStudy study;
    try {
      study = consistency_order(spec.setup);
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << '\n';
      return kFailure;
    }
    json j = to_json(study);
    j["family"] = to_string(spec.family);
    j["p"] = to_string(spec.p);
    j["theta2"] = to_string(spec.theta2);
    j["t_probe"] = spec.setup.t_probe;
    j["grid"] = {{"length", spec.setup.length}, {"n", spec.setup.n}};
    j["fitted_quantity"] = "sqrt(r1_l2^2 + r2_l2^2)";
    write_json_file(dir / "order.json", j);
    std::ostringstream csv;
    write_residuals_csv(csv, study.points);
    write_text_file(dir / "residuals.csv", csv.str());
    out << "consistency exponent: " << format_double(study.fit.exponent) << '\n';
    if (spec.round_trip) {
      const RoundTripStudy rt = round_trip_study(spec.setup, spec.depth_mode);
      write_json_file(dir / "roundtrip.json", json{{"exponent", rt.fit.exponent}, {"depth_mode", std::string(to_string(spec.depth_mode))},
                                                   {"mu", rt.mu}, {"error_sup", rt.error_sup}});
      out << "round-trip exponent: " << format_double(rt.fit.exponent) << '\n';
    }
    out << "output: " << dir.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("WAVELAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_sweep(const std::filesystem::path& config, const std::filesystem::path& out_dir, unsigned threads,
              std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  try {
    spec = parse_sweep(read_json_file(config));
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  struct Cell {
    double amplitude = 0.0;
    double mu = 0.0;
    double eps = 0.0;
    std::string termination = "error";
    std::optional<double> termination_time;
    std::string classification;
    std::optional<double> detected_time;
    std::string bracket_ok;
    std::string error;
  };
  std::vector<Cell> cells;
  for (double mu : spec.mu_list) {
    for (double a : spec.amplitudes) {
      Cell cell;
      cell.amplitude = a;
      cell.mu = mu;
      cells.push_back(cell);
    }
  }
  const auto dir = out_dir / spec.name;
  std::filesystem::create_directories(dir);

  auto work = [&](std::size_t i) {
    Cell& cell = cells[i];
    try {
      ExperimentSpec cs = spec.base;
      cs.name = "cell_" + std::to_string(i);
      cs.run.profile.amplitude = cell.amplitude;
      const double eps = spec.base.eps_entry.is_number() ? spec.base.eps_entry.get<double>() : std::sqrt(cell.mu);
      cell.eps = eps;
      cs.run.scaling = make_scaling(eps, cell.mu, spec.base.run.scaling.mu0, spec.base.run.scaling.bigM);
      const RunOutcome o = execute(cs);
      write_run_outputs(dir / cs.name, cs, o.result, o.breaking);
      cell.termination = to_string(o.result.termination);
      cell.termination_time = o.result.termination_time;
      if (o.breaking) {
        cell.classification = std::string(to_string(o.breaking->verdict.type));
        cell.detected_time = o.breaking->detected_time;
        if (o.breaking->bracket_ok) cell.bracket_ok = *o.breaking->bracket_ok ? "true" : "false";
      }
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) work(i);
      });
    }
  }

  std::ostringstream csv;
  csv << "cell,amplitude,mu,eps,termination,termination_time,classification,detected_time,bracket_ok,error\n";
  std::size_t failures = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    std::string error = c.error;
    for (char& ch : error) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    failures += !error.empty();
    csv << i << ',' << format_double(c.amplitude) << ',' << format_double(c.mu) << ',' << format_double(c.eps) << ','
        << c.termination << ',' << opt_text(c.termination_time) << ',' << c.classification << ','
        << opt_text(c.detected_time) << ',' << c.bracket_ok << ',' << error << '\n';
  }
  try {
    write_text_file(dir / "summary.csv", csv.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  out << spec.name << ": " << cells.size() << " cells, " << failures << " failed; summary: " << (dir / "summary.csv").string()
      << '\n';
  return kOk;
}

}  // namespace wavelab::io
