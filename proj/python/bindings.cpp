#include "wavelab/asymptotics.hpp"
#include "wavelab/breaking.hpp"
#include "wavelab/grid.hpp"
#include "wavelab/io/commands.hpp"
#include "wavelab/io/config.hpp"
#include "wavelab/model_params.hpp"
#include "wavelab/solver.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
namespace wl = wavelab;
using nlohmann::json;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v) { return Array(static_cast<py::ssize_t>(v.size()), v.data()); }

std::vector<double> from_array(const Array& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

Array grid_x(const wl::Grid& g) {
  std::vector<double> x(g.n);
  for (std::size_t i = 0; i < g.n; ++i) x[i] = g.x(i);
  return to_array(x);
}

wl::Field field_on_grid(const Array& values, double length, double origin) {
  auto v = from_array(values);
  const auto g = wl::make_grid(length, v.size(), origin);
  return wl::Field(g, std::move(v));
}

std::string coefficients_json(const std::string& family, const std::string& param, const std::string& theta2) {
  const auto fam = wl::io::family_from_string(family);
  const auto c = wl::io::family_coefficients(fam, wl::parse_rational(param), wl::parse_rational(theta2));
  json j{{"classification", std::string(wl::to_string(wl::classify(c)))}};
  const std::pair<const char*, const wl::Rational*> rows[] = {{"alpha", &c.alpha}, {"beta", &c.beta},
                                                              {"gamma", &c.gamma}, {"delta", &c.delta},
                                                              {"iota", &c.iota},   {"kappa", &c.kappa}};
  for (const auto& [name, value] : rows) {
    j["exact"][name] = wl::to_string(*value);
    j["value"][name] = wl::to_double(*value);
  }
  return j.dump();
}

py::dict run_experiment(const std::string& config) {
  const auto spec = wl::io::parse_experiment(json::parse(config));
  wl::RunResult r;
  {
    py::gil_scoped_release release;
    r = wl::run(spec.run);
  }
  py::list snaps;
  for (const auto& s : r.snapshots) {
    py::dict d;
    d["t"] = s.time;
    d["x"] = grid_x(s.field.grid());
    d["u"] = to_array(s.field.values());
    snaps.append(d);
  }
  std::vector<double> t, mx, amx, mn, amn, inv;
  for (const auto& row : r.slope_series) {
    t.push_back(row.t);
    mx.push_back(row.max_slope);
    amx.push_back(row.argmax);
    mn.push_back(row.min_slope);
    amn.push_back(row.argmin);
    inv.push_back(row.invariant);
  }
  py::dict slopes;
  slopes["t"] = to_array(t);
  slopes["max_slope"] = to_array(mx);
  slopes["argmax"] = to_array(amx);
  slopes["min_slope"] = to_array(mn);
  slopes["argmin"] = to_array(amn);
  slopes["invariant"] = to_array(inv);

  py::dict out;
  out["termination"] = wl::to_string(r.termination);
  out["termination_time"] = r.termination_time;
  out["dt"] = r.dt;
  out["steps"] = r.steps;
  out["snapshots"] = snaps;
  out["slopes"] = slopes;
  out["breaking"] = py::none();
  if (spec.breaking_report) {
    const auto z0 = spec.run.profile.sample(spec.run.grid);
    if (z0.max_abs() > 0.0 && wl::diff(z0, 1).max_abs() > 0.0) {
      const auto rep = wl::analyze_breaking(r, z0, spec.run.scaling, spec.criterion_mode, spec.sensitivity);
      out["breaking"] = wl::to_json(rep).dump();
    }
  }
  return out;
}

wl::StudySetup study_setup(const std::string& family, const std::string& p, const std::string& theta2,
                           const std::vector<double>& mu_list, double t_probe, std::size_t n, double length) {
  wl::StudySetup s;
  s.coeffs = wl::io::family_coefficients(wl::io::family_from_string(family), wl::parse_rational(p),
                                         wl::parse_rational(theta2))
                 .to_double();
  s.mu_list = mu_list;
  s.t_probe = t_probe;
  s.n = n;
  s.length = length;
  return s;
}

std::pair<int, std::string> captured(const std::function<int(std::ostream&, std::ostream&)>& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str() + err.str()};
}

}  // namespace

PYBIND11_MODULE(_wavelab, m) {
  m.doc() = "Moving-frame solver and breaking diagnostics for weakly nonlinear shallow-water models.";

  py::register_exception<wl::io::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("coefficients_json", &coefficients_json, py::arg("family"), py::arg("param"), py::arg("theta2") = "1/3");
  m.def("preset_names", &wl::preset_names);
  m.def(
      "preset_json", [](const std::string& name) { return wl::to_json(wl::preset(name).to_double()).dump(); },
      py::arg("name"));
  m.def(
      "classify_json",
      [](const std::string& coeffs, double tol) {
        return std::string(wl::to_string(wl::classify(wl::coefficients_from_json(json::parse(coeffs)), tol)));
      },
      py::arg("coefficients"), py::arg("tol") = 1e-12);

  m.def(
      "kernel_norms",
      [](double mu) {
        const auto k = wl::kernel_norms(mu);
        py::dict d;
        d["sup"] = k.sup;
        d["l1"] = k.l1;
        d["l2"] = k.l2;
        d["sup_dx"] = k.sup_dx;
        d["l1_dx"] = k.l1_dx;
        d["l2_dx"] = k.l2_dx;
        return d;
      },
      py::arg("mu"));
  m.def(
      "convolve_P",
      [](const Array& f, double length, double mu) {
        return to_array(wl::convolve_P(field_on_grid(f, length, -0.5 * length), mu).values());
      },
      py::arg("values"), py::arg("length"), py::arg("mu"));

  m.def("run_json", &run_experiment, py::arg("config"));

  m.def(
      "blowup_criterion_json",
      [](const Array& zeta0, double length, double eps, double mu, double mu0, double big_m, const std::string& mode) {
        const auto sc = wl::make_scaling(eps, mu, mu0, big_m);
        const auto rep =
            wl::blowup_criterion(field_on_grid(zeta0, length, -0.5 * length), sc, wl::criterion_mode_from_string(mode));
        return wl::to_json(rep).dump();
      },
      py::arg("zeta0"), py::arg("length"), py::arg("eps"), py::arg("mu"), py::arg("mu0") = 1.0, py::arg("M") = 1.0,
      py::arg("mode") = "sup_zeta0");

  m.def(
      "slope_bounds_fraction",
      [](const Array& t, const Array& mvals, double eps, double mu, double c0, double rel_slack) {
        const auto rep =
            wl::slope_ode_bounds_check(from_array(t), from_array(mvals), wl::make_scaling(eps, mu), c0, rel_slack);
        return py::make_tuple(rep.fraction(), rep.passed, rep.steps.size());
      },
      py::arg("t"), py::arg("m"), py::arg("eps"), py::arg("mu"), py::arg("c0"), py::arg("rel_slack") = 1e-9);

  m.def(
      "consistency_order_json",
      [](const std::string& family, const std::string& p, const std::string& theta2, const std::vector<double>& mu_list,
         double t_probe, std::size_t n, double length) {
        const auto s = study_setup(family, p, theta2, mu_list, t_probe, n, length);
        py::gil_scoped_release release;
        return wl::to_json(wl::consistency_order(s)).dump();
      },
      py::arg("family") = "one-param", py::arg("p") = "-1/12", py::arg("theta2") = "1/3",
      py::arg("mu_list") = std::vector<double>{0.2, 0.1, 0.05, 0.025}, py::arg("t_probe") = 0.5, py::arg("n") = 1024,
      py::arg("length") = 20.0);

  m.def(
      "round_trip",
      [](const std::string& family, const std::string& p, const std::string& theta2, const std::vector<double>& mu_list,
         const std::string& depth_mode) {
        const auto s = study_setup(family, p, theta2, mu_list, 0.5, 1024, 20.0);
        const auto mode = wl::depth_mode_from_string(depth_mode);
        wl::RoundTripStudy rt;
        {
          py::gil_scoped_release release;
          rt = wl::round_trip_study(s, mode);
        }
        py::dict d;
        d["exponent"] = rt.fit.exponent;
        d["mu"] = rt.mu;
        d["error_sup"] = rt.error_sup;
        return d;
      },
      py::arg("family") = "one-param", py::arg("p") = "-1/12", py::arg("theta2") = "1/3",
      py::arg("mu_list") = std::vector<double>{0.2, 0.1, 0.05, 0.025}, py::arg("depth_mode") = "free-surface");

  m.def(
      "cmd_run",
      [](const std::filesystem::path& config, const std::filesystem::path& out_dir) {
        py::gil_scoped_release release;
        return captured([&](std::ostream& o, std::ostream& e) { return wl::io::cmd_run(config, out_dir, o, e); });
      },
      py::arg("config"), py::arg("out_dir"));
  m.def(
      "cmd_residual_study",
      [](const std::filesystem::path& config, const std::filesystem::path& out_dir, bool self_test) {
        py::gil_scoped_release release;
        return captured(
            [&](std::ostream& o, std::ostream& e) { return wl::io::cmd_residual_study(config, out_dir, self_test, o, e); });
      },
      py::arg("config"), py::arg("out_dir"), py::arg("self_test") = false);
  m.def(
      "cmd_sweep",
      [](const std::filesystem::path& config, const std::filesystem::path& out_dir, unsigned threads) {
        py::gil_scoped_release release;
        return captured([&](std::ostream& o, std::ostream& e) { return wl::io::cmd_sweep(config, out_dir, threads, o, e); });
      },
      py::arg("config"), py::arg("out_dir"), py::arg("threads") = 1);
}
