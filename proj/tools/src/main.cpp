#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "epct/cli/commands.hpp"
#include "epct/cli/output.hpp"
#include "epct/cli/run_config.hpp"

namespace {

int fail(int code, const std::string& message) {
  std::cerr << epct::cli::error_document(code, message).dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace epct::cli;

  CLI::App app{"Critical-threshold toolkit for damped Euler-Poisson systems"};
  app.set_version_flag("--version", "ct 0.3.0");
  std::string command;
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  bool print_config = false;

  app.add_option("command", command, "classify | sweep | simulate | thresholds | resonance | characteristics | coldion")
      ->required()
      ->check(CLI::IsMember({"classify", "sweep", "simulate", "thresholds", "resonance",
                             "characteristics", "coldion"}));
  app.add_option("--config", config_path, "JSON run manifest")->check(CLI::ExistingFile);
  app.add_option("--out", out, "Output path (default: stdout)");
  app.add_option("--format", format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "RNG seed recorded in the output");
  app.add_option("--epsilon", epsilon, "Resonance amplitude");
  app.add_flag("--print-config", print_config, "Print the resolved manifest and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitInvalid, e.what());
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) return fail(kExitInvalid, "cannot read config: " + config_path);
      epct::json j;
      try {
        j = epct::json::parse(is);
      } catch (const epct::json::parse_error& e) {
        return fail(kExitInvalid, std::string("config is not valid JSON: ") + e.what());
      }
      config = parse_config(j);
    }
    config.command = command_from_string(command);
    if (out) config.out = *out;
    if (format) config.format = format_from_string(*format);
    if (jobs) config.jobs = *jobs;
    if (seed) config.seed = *seed;
    if (epsilon) config.epsilon = *epsilon;
  } catch (const epct::InvalidArgument& e) {
    return fail(kExitInvalid, e.what());
  }

  if (print_config) {
    std::cout << config_to_json(config).dump(2) << '\n';
    return kExitOk;
  }
  return run(config, std::cout, std::cerr);
}
