#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsc/instance.hpp"

namespace gsc::cli {

struct Settings {
  std::optional<int> max_degree;
  std::optional<std::string> bpf_mode;
  std::optional<long> budget;
  std::string output = "json";
  std::optional<std::string> precedence;
  std::vector<std::pair<std::string, std::string>> params;
  int jobs = 0;
};

struct CommandResult {
  int exit_code = 0;
  Json json;
  std::string text;
};

/// Runs one subcommand on a parsed JSON document. Library failures propagate
/// as gsc::Error.
CommandResult run_command(const std::string& command, const Json& doc, const Settings& s);

/// Grid search; `base_dir` resolves a relative instance path.
CommandResult run_search(const Json& grid, const std::string& base_dir, const Settings& s);

/// "--param name=value".
std::pair<std::string, std::string> split_param(const std::string& text);

}  // namespace gsc::cli
