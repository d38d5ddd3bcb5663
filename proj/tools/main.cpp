#include <chrono>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "gsc/commands.hpp"
#include "gsc/report.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

void add_common(CLI::App* sub, gsc::cli::Settings& s, std::string& input, std::vector<std::string>& params) {
  sub->add_option("input", input, "instance, presentation or grid file")->required();
  sub->add_option("--max-degree", s.max_degree, "degree bound N")->check(CLI::PositiveNumber);
  sub->add_option("--bpf-mode", s.bpf_mode, "exact | scan:p[,k]");
  sub->add_option("--budget", s.budget, "normality checks allowed in the search")->check(CLI::NonNegativeNumber);
  sub->add_option("--output", s.output, "json | text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--precedence", s.precedence, "generator order, smallest first, e.g. 2,1");
  sub->add_option("--param", params, "override a parameter, name=value");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gsc::cli;
  CLI::App app{"graded skew Clifford algebra toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  Settings settings;
  std::string input;
  std::vector<std::string> params;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "check mu and mu-symmetry, or a presentation's grading"},
      {"quadrics", "print the quadric system"},
      {"normalize", "search for a normalizing sequence"},
      {"bpf", "decide base-point freeness"},
      {"hilbert", "Hilbert function and growth estimate"},
      {"analyze", "run the full pipeline"},
      {"search", "analyze every point of a parameter grid"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, settings, input, params);
    if (name == "search") sub->add_option("--jobs", settings.jobs, "worker threads")->check(CLI::NonNegativeNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    for (const auto& p : params) settings.params.push_back(split_param(p));
    const Json doc = read_json_file(input);
    if (command == "search")
      result = run_search(doc, std::filesystem::path(input).parent_path().string(), settings);
    else
      result = run_command(command, doc, settings);
  } catch (const gsc::Error& e) {
    std::cerr << "error [" << e.module() << "/" << gsc::to_string(e.kind()) << "]: " << e.what() << "\n";
    return e.kind() == gsc::ErrorKind::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error [cli/Internal]: " << e.what() << "\n";
    return 1;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  if (settings.output == "text") {
    std::cout << result.text;
  } else if (command == "search") {
    for (const auto& line : result.json["points"]) std::cout << line.dump() << "\n";
    Json summary{{"summary", result.json["summary"]},
                 {"meta", Json{{"tool", "gsc"}, {"version", kVersion}, {"command", command}, {"elapsed_ms", elapsed}}}};
    std::cout << summary.dump() << "\n";
  } else {
    Json doc{{"meta", Json{{"tool", "gsc"}, {"version", kVersion}, {"command", command}, {"elapsed_ms", elapsed}}},
             {"result", result.json}};
    std::cout << doc.dump(2) << "\n";
  }
  return result.exit_code;
}
