// Command implementations of the ct tool.
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "epct/cli/run_config.hpp"

namespace epct::cli {

struct SweepRow {
  PhasePoint point;
  Verdict verdict;
  std::optional<double> blowup_time;
  std::optional<double> bound;
};

/// Classifies every grid cell; with simulate_cells also integrates each start.
std::vector<SweepRow> sweep_rows(const RunConfig& config);

/// Renders the output document of a validated config.
std::string render(const RunConfig& config);

/// Validates and renders `config`, writing to config.out (atomically) or to
/// `out`. Errors go to `err` as one JSON line. Returns 0, 2 or 3.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace epct::cli
