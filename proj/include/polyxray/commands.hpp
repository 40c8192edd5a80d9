#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "polyxray/io.hpp"

namespace polyxray::cli {

using json = nlohmann::json;

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kNonConvergence = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  json config = json::object();
  std::uint64_t seed = 0;
  std::filesystem::path base_dir = ".";  // relative file references resolve here
};

struct Artifact {
  std::string name;
  std::string contents;
};

struct RunReport {
  std::string command;
  json config;
  std::uint64_t seed = 0;
  json results = json::object();
  std::vector<std::string> warnings;
  bool passed = false;
  int exit_code = kFail;
  std::string error;
  double wall_time = 0;
  std::vector<Artifact> artifacts;

  json to_json() const;
};

const std::vector<std::string>& command_names();

/// Throws UsageError on unknown commands or invalid configs; module failures that are not usage
/// errors end up in the report with exit code 1 or 3.
RunReport run_command(const std::string& name, const RunConfig& config);

/// report.json plus every artifact, inside `dir`.
void write_outputs(const RunReport& report, const std::filesystem::path& dir);

}  // namespace polyxray::cli
