#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wkgeom {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  double tolerance = 1e-8;
  int steps = 2048;
  bool steps_explicit = false;
  std::uint64_t seed = 0;
  double lambda = 1.0;
  std::string format = "json";
  int samples = 16;
  std::string semi = "auto";
  std::vector<int> n_list;
  /// Directory that relative inputs resolve against.
  std::filesystem::path base_dir;

  json to_json() const;
};

/// One row per sample/curve/branch for CSV output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

struct Outcome {
  json results = json::object();
  json residuals = json::object();
  json errors = json::array();
  Table table;
  /// 0 success, 2 validation, 3 numerical.
  int exit_code = 0;
};

/// Validates the config and dispatches on the command. Never throws; errors
/// land in Outcome::errors with the matching exit code.
Outcome run(const RunConfig& config);

/// {"command", "config", "results", "residuals", "errors"}.
json report(const RunConfig& config, const Outcome& outcome);

std::string to_csv(const Table& table);

}  // namespace wkgeom
