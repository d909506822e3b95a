#include "epct/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epct/attractive.hpp"
#include "epct/io.hpp"

namespace epct::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 640.0;
constexpr double kMargin = 60.0;

const char* fill_for(Label label) {
  switch (label) {
    case Label::subcritical: return "#4c9be8";
    case Label::supercritical: return "#e8584c";
    case Label::indeterminate: return "#d9d9d9";
  }
  return "#d9d9d9";
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Frame {
  double w_lo, w_hi, s_lo, s_hi;
  [[nodiscard]] double x(double w) const {
    return kMargin + (w - w_lo) / (w_hi - w_lo) * (kWidth - 2.0 * kMargin);
  }
  [[nodiscard]] double y(double s) const {
    return kHeight - kMargin - (s - s_lo) / (s_hi - s_lo) * (kHeight - 2.0 * kMargin);
  }
  [[nodiscard]] bool inside(const PhasePoint& p) const {
    return p.w >= w_lo && p.w <= w_hi && p.s >= s_lo && p.s <= s_hi;
  }
};

std::string fmt(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

void curve_points(Polyline& line, const ThresholdCurve& curve, int sign) {
  const std::size_t n = 400;
  const double lo = curve.s_lo();
  const double hi = curve.s_hi();
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    line.points.push_back({sign * curve(s), s});
  }
}

}  // namespace

std::string emit_svg(const SweepGrid& grid, const std::vector<SweepCell>& cells,
                     const std::vector<Polyline>& curves) {
  Frame frame{grid.w_lo, grid.w_hi, grid.s_lo, grid.s_hi};
  if (!(frame.w_hi > frame.w_lo)) frame.w_hi = frame.w_lo + 1.0;
  if (!(frame.s_hi > frame.s_lo)) frame.s_hi = frame.s_lo + 1.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!cells.empty() && grid.nw > 0 && grid.ns > 0) {
    const double cw = (kWidth - 2.0 * kMargin) / static_cast<double>(grid.nw);
    const double ch = (kHeight - 2.0 * kMargin) / static_cast<double>(grid.ns);
    os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::size_t iw = i % grid.nw;
      const std::size_t is = i / grid.nw;
      const double x = kMargin + static_cast<double>(iw) * cw;
      const double y = kHeight - kMargin - static_cast<double>(is + 1) * ch;
      os << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(cw)
         << "\" height=\"" << fmt(ch) << "\" fill=\"" << fill_for(cells[i].verdict.label)
         << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g id=\"curves\" fill=\"none\" stroke-width=\"2\">\n";
  for (const auto& curve : curves) {
    std::vector<std::vector<PhasePoint>> runs(1);
    for (const auto& p : curve.points) {
      if (frame.inside(p) && std::isfinite(p.w) && std::isfinite(p.s)) {
        runs.back().push_back(p);
      } else if (!runs.back().empty()) {
        runs.emplace_back();
      }
    }
    for (const auto& run : runs) {
      if (run.size() < 2) continue;
      os << "<polyline stroke=\"" << escape(curve.color) << "\" points=\"";
      for (const auto& p : run) os << fmt(frame.x(p.w)) << ',' << fmt(frame.y(p.s)) << ' ';
      os << "\"><title>" << escape(curve.label) << "</title></polyline>\n";
    }
  }
  os << "</g>\n";

  const double left = kMargin;
  const double right = kWidth - kMargin;
  const double top = kMargin;
  const double bottom = kHeight - kMargin;
  os << "<g id=\"axes\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\""
     << bottom - top << "\" fill=\"none\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    const double w = frame.w_lo + f * (frame.w_hi - frame.w_lo);
    const double s = frame.s_lo + f * (frame.s_hi - frame.s_lo);
    const double x = frame.x(w);
    const double y = frame.y(s);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << bottom << "\" x2=\"" << fmt(x) << "\" y2=\""
       << bottom + 5 << "\"/>\n"
       << "<text x=\"" << fmt(x) << "\" y=\"" << bottom + 20
       << "\" text-anchor=\"middle\" stroke=\"none\">" << fmt(w) << "</text>\n"
       << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << left << "\" y2=\""
       << fmt(y) << "\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"end\" stroke=\"none\">" << fmt(s) << "</text>\n";
  }
  os << "<text x=\"" << 0.5 * (left + right) << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\" stroke=\"none\" font-size=\"16\">w</text>\n"
     << "<text x=\"18\" y=\"" << 0.5 * (top + bottom)
     << "\" text-anchor=\"middle\" stroke=\"none\" font-size=\"16\">s</text>\n"
     << "</g>\n</svg>\n";
  return os.str();
}

std::vector<Polyline> threshold_polylines(const RepulsiveThresholds& thresholds) {
  std::vector<Polyline> lines;
  auto add = [&](const char* label, const char* color, const ThresholdCurve& curve, int sign) {
    Polyline line{label, color, {}};
    curve_points(line, curve, sign);
    lines.push_back(std::move(line));
  };
  add("-sqrt(2 P-)", "#7a1010", thresholds.p_minus(), -1);
  if (thresholds.n_plus()) add("sqrt(2 N+)", "#7a1010", *thresholds.n_plus(), +1);
  add("-sqrt(2 P+)", "#0d3d7a", thresholds.p_plus(), -1);
  if (thresholds.n_minus()) add("sqrt(2 N-)", "#0d3d7a", *thresholds.n_minus(), +1);
  return lines;
}

std::vector<Polyline> attractive_polylines(const Params& params, double s_lo, double s_hi) {
  std::vector<Polyline> lines;
  auto add = [&](const char* label, const char* color, double c) {
    const double lambda_s = eigensystem(params.nu, c).lambda_s;
    Polyline line{label, color, {}};
    for (int i = 0; i <= 200; ++i) {
      const double s = s_lo + (s_hi - s_lo) * i / 200.0;
      line.points.push_back({lambda_s * (s - 1.0 / c), s});
    }
    lines.push_back(std::move(line));
  };
  add("L_s = 0 at c-", "#0d3d7a", params.c_minus);
  add("L_s = 0 at c+", "#7a1010", params.c_plus);
  return lines;
}

}  // namespace epct::cli
