#pragma once

#include "wavelab/asymptotics.hpp"
#include "wavelab/breaking.hpp"
#include "wavelab/io/config.hpp"
#include "wavelab/solver.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wavelab::io {

std::string snapshot_filename(std::size_t index, double time);

void write_field_csv(std::ostream& os, const Field& f, const std::string& value_column = "u");
void write_slopes_csv(std::ostream& os, const std::vector<SlopeRow>& series);
void write_residuals_csv(std::ostream& os, const std::vector<ResidualReport>& rows);

/// Every effective parameter of a run plus its termination and series summary.
nlohmann::json manifest_json(const ExperimentSpec& spec, const RunResult& result);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// manifest.json, snap_*.csv, slopes.csv and (when given) breaking.json in dir.
void write_run_outputs(const std::filesystem::path& dir, const ExperimentSpec& spec, const RunResult& result,
                       const std::optional<BreakingReport>& breaking);

}  // namespace wavelab::io
