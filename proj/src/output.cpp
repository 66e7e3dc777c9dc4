#include "wavelab/io/output.hpp"

#include "wavelab/format.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavelab::io {

using json = nlohmann::json;

std::string snapshot_filename(std::size_t index, double time) {
  return "snap_" + std::to_string(index) + "_t" + format_double(time) + ".csv";
}

void write_field_csv(std::ostream& os, const Field& f, const std::string& value_column) {
  os << "x," << value_column << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << format_double(f.grid().x(i)) << ',' << format_double(f[i]) << '\n';
  }
}

void write_slopes_csv(std::ostream& os, const std::vector<SlopeRow>& series) {
  os << "t,max_slope,argmax,min_slope,argmin,invariant\n";
  for (const auto& r : series) {
    os << format_double(r.t) << ',' << format_double(r.max_slope) << ',' << format_double(r.argmax) << ','
       << format_double(r.min_slope) << ',' << format_double(r.argmin) << ',' << format_double(r.invariant) << '\n';
  }
}

void write_residuals_csv(std::ostream& os, const std::vector<ResidualReport>& rows) {
  os << "mu,eps,t,r1_l2,r1_sup,r2_l2,r2_sup\n";
  for (const auto& r : rows) {
    os << format_double(r.mu) << ',' << format_double(r.eps) << ',' << format_double(r.time) << ','
       << format_double(r.r1_l2) << ',' << format_double(r.r1_sup) << ',' << format_double(r.r2_l2) << ','
       << format_double(r.r2_sup) << '\n';
  }
}

namespace {

json profile_json(const Profile& p) {
  json j{{"kind", to_string(p.kind)}, {"amplitude", p.amplitude}};
  switch (p.kind) {
    case Profile::Kind::Gaussian:
    case Profile::Kind::Sech2:
      j["width"] = p.width;
      j["center"] = p.center;
      break;
    case Profile::Kind::Sine: j["mode"] = p.mode; break;
    case Profile::Kind::Custom: j["values"] = p.values; break;
  }
  return j;
}

}  // namespace

json manifest_json(const ExperimentSpec& spec, const RunResult& res) {
  const RunConfig& c = spec.run;
  json snaps = json::array();
  for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
    snaps.push_back({{"index", i}, {"time", res.snapshots[i].time}, {"file", snapshot_filename(i, res.snapshots[i].time)}});
  }
  double max_slope = 0.0;
  double min_slope = 0.0;
  for (const auto& r : res.slope_series) {
    max_slope = std::max(max_slope, r.max_slope);
    min_slope = std::min(min_slope, r.min_slope);
  }
  json snapshot_policy = c.snapshots.times.empty() ? json{{"count", c.snapshots.spread}} : json{{"times", c.snapshots.times}};
  return json{
      {"name", spec.name},
      {"preset", spec.preset ? json(*spec.preset) : json(nullptr)},
      {"coefficients", to_json(c.coeffs)},
      {"classification", std::string(to_string(classify(c.coeffs)))},
      {"scaling", {{"eps", c.scaling.eps}, {"eps_entry", spec.eps_entry}, {"mu", c.scaling.mu}, {"mu0", c.scaling.mu0}, {"M", c.scaling.bigM}}},
      {"grid", {{"length", c.grid.length}, {"n", c.grid.n}, {"origin", c.grid.origin}, {"dx", c.grid.dx()}}},
      {"time", {{"t_end", c.t_end}, {"dt", res.dt}, {"dt_policy", spec.dt_policy}, {"dt_requested", c.dt}, {"steps_taken", res.steps}}},
      {"frame", "moving (xi = x - t); snapshots shifted to lab x"},
      {"scheme", {{"start", "euler"}, {"asselin", c.asselin}, {"nonlinear", c.nonlinear}}},
      {"stop_on_slope", c.stop_on_slope},
      {"profile", profile_json(c.profile)},
      {"snapshot_policy", snapshot_policy},
      {"analysis", {{"breaking", spec.breaking_report}, {"criterion_mode", std::string(to_string(spec.criterion_mode))}, {"sensitivity", spec.sensitivity}}},
      {"termination", {{"kind", to_string(res.termination)}, {"time", res.termination_time}, {"crossing_sign", res.crossing_sign}}},
      {"series", {{"rows", res.slope_series.size()}, {"max_slope", max_slope}, {"min_slope", min_slope}, {"file", "slopes.csv"}}},
      {"snapshots", snaps},
  };
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_run_outputs(const std::filesystem::path& dir, const ExperimentSpec& spec, const RunResult& res,
                       const std::optional<BreakingReport>& breaking) {
  std::filesystem::create_directories(dir);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string fname = entry.path().filename().string();
    if (fname.starts_with("snap_") && fname.ends_with(".csv")) std::filesystem::remove(entry.path());
  }
  if (!breaking) std::filesystem::remove(dir / "breaking.json");
  write_json_file(dir / "manifest.json", manifest_json(spec, res));
  for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
    std::ostringstream os;
    write_field_csv(os, res.snapshots[i].field);
    write_text_file(dir / snapshot_filename(i, res.snapshots[i].time), os.str());
  }
  std::ostringstream slopes;
  write_slopes_csv(slopes, res.slope_series);
  write_text_file(dir / "slopes.csv", slopes.str());
  if (breaking) write_json_file(dir / "breaking.json", to_json(*breaking));
}

}  // namespace wavelab::io
