// Standalone SVG rendering of verdict grids and threshold curves in (w, s).
#pragma once

#include <string>
#include <vector>

#include "epct/core.hpp"
#include "epct/thresholds.hpp"

namespace epct::cli {

struct Polyline {
  std::string label;
  std::string color;
  std::vector<PhasePoint> points;
};

/// Cells share the grid's (w, s) window; curves are clipped to it.
std::string emit_svg(const SweepGrid& grid, const std::vector<SweepCell>& cells,
                     const std::vector<Polyline>& curves);

/// Bounding curves of the repulsive construction as (w, s) polylines:
/// w = -g_P(s) for the lower bounds and w = g_N(s) for the upper bounds.
std::vector<Polyline> threshold_polylines(const RepulsiveThresholds& thresholds);

/// The lines L_s = 0 against c- and c+ of the attractive classification.
std::vector<Polyline> attractive_polylines(const Params& params, double s_lo, double s_hi);

}  // namespace epct::cli
