// Run manifest for the ct tool: one JSON document per experiment.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epct/characteristics.hpp"
#include "epct/core.hpp"
#include "epct/io.hpp"
#include "epct/thresholds.hpp"

namespace epct::cli {

enum class Command { classify, sweep, simulate, thresholds, resonance, characteristics, coldion };
enum class Format { csv, json, svg };

const char* to_string(Command command);
Command command_from_string(const std::string& text);
const char* to_string(Format format);
Format format_from_string(const std::string& text);

struct RunConfig {
  Command command = Command::classify;
  Params params;
  /// c(t) for simulate and swept simulations; defaults to the constant c-.
  std::optional<Background> background;
  /// Draw one random admissible sinusoid in [c-, c+] per simulated start.
  bool random_background = false;

  PhasePoint point;  // classify, simulate
  SweepGrid grid;    // sweep
  bool simulate_cells = false;  // sweep: fill blowup_time by simulation
  double horizon = 100.0;
  double tol = 1e-9;
  double rel_tol = 1e-11;
  std::size_t dense_samples = 0;  // simulate csv: extra uniform samples

  double s_max = 4.0;  // thresholds

  double epsilon = 0.05;  // resonance
  double phase = 0.0;

  DatumSpec datum;  // characteristics, coldion
  UniformGrid labels{-8.0, 8.0, 1001};
  std::vector<double> snapshot_times;

  UniformGrid x_grid{-20.0, 20.0, 2001};  // coldion

  std::string out;  // empty: stdout
  Format format = Format::json;
  unsigned jobs = 1;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

/// Throws InvalidArgument for malformed or out-of-range fields.
RunConfig parse_config(const json& j);
json config_to_json(const RunConfig& config);
void validate_config(const RunConfig& config);

/// Formats each command can emit.
bool supports(Command command, Format format);

}  // namespace epct::cli
