#include "epct/thresholds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "epct/parallel.hpp"
#include "epct/quadrature.hpp"

namespace epct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Domains wider than this are truncated to the requested range.
constexpr double kMaxTracedEndpoint = 1e9;

ode::Options curve_options() {
  ode::Options opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-14;
  return opts;
}

bool overdamped(double c, double nu) { return nu >= 2.0 * std::sqrt(c); }

EndpointSeries make_series(double root, int orientation, double kappa, int sigma, double c,
                           double nu) {
  EndpointSeries series;
  series.root = root;
  series.orientation = orientation;
  series.kappa = kappa;
  series.a = sigma * nu * std::numbers::sqrt2 / (3.0 * std::sqrt(kappa));
  series.b = nu * nu / (18.0 * kappa) - c / (4.0 * kappa);
  series.radius = 1e-6 * std::max(1.0, 1.0 / c);
  return series;
}

void check_curve_inputs(double c, double nu) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("curve constant c must be > 0");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidArgument("damping nu must be >= 0");
}

// Horizon in arc time generous enough to reach the far endpoint.
double arc_horizon(double c, double nu) {
  if (overdamped(c, nu)) return 1e4;
  const double mu = std::sqrt(c - 0.25 * nu * nu);
  return std::min(1.5 * std::numbers::pi / mu + 1.0, 1e7);
}

}  // namespace

const char* to_string(Branch branch) { return branch == Branch::P ? "P" : "N"; }
const char* to_string(Regime regime) {
  return regime == Regime::bounded ? "bounded" : "unbounded";
}

double EndpointSeries::value(double d) const {
  if (d <= 0.0) return 0.0;
  const double r = std::sqrt(d);
  return std::sqrt(2.0 * kappa * d) * (1.0 + a * r + b * d);
}

bool ThresholdCurve::contains(double s, double slack) const {
  const double pad = slack * std::max(1.0, std::abs(s_hi_));
  return s >= s_lo_ - pad && s <= s_hi_ + pad;
}

double ThresholdCurve::locate_tau(double s) const {
  const auto& times = path_.times();
  const auto& states = path_.states();
  const double dir = branch_ == Branch::P ? 1.0 : -1.0;
  // s is monotone along the path: increasing for P, decreasing for N.
  auto key = [&](std::size_t i) { return dir * states[i][0]; };
  const double target = dir * s;
  std::size_t lo = 0;
  std::size_t hi = times.size() - 1;
  if (target <= key(lo)) return times.front();
  if (target >= key(hi)) return times.back();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (key(mid) <= target ? lo : hi) = mid;
  }
  double ta = times[lo];
  double tb = times[hi];
  double fa = key(lo) - target;
  double fb = key(hi) - target;
  double tau = ta - fa * (tb - ta) / (fb - fa);
  std::array<double, 2> y{};
  for (int it = 0; it < 100; ++it) {
    path_.eval_into(tau, y);
    const double f = dir * y[0] - target;
    if (f == 0.0) return tau;
    if (f < 0.0) {
      ta = tau;
      fa = f;
    } else {
      tb = tau;
      fb = f;
    }
    const double df = y[1];  // d(dir*s)/dtau = g
    double next = df > 0.0 ? tau - f / df : 0.5 * (ta + tb);
    if (!(next > ta && next < tb)) next = 0.5 * (ta + tb);
    if (std::abs(next - tau) <= 1e-15 * (1.0 + std::abs(tau)) || tb - ta <= 1e-15 * (1.0 + tb)) {
      return next;
    }
    tau = next;
  }
  return tau;
}

double ThresholdCurve::operator()(double s) const {
  if (!contains(s)) throw InvalidArgument("s outside curve domain");
  s = std::clamp(s, s_lo_, s_hi_);
  const double d_anchor = anchor_series_.distance(s);
  if (d_anchor < anchor_series_.radius) return anchor_series_.value(d_anchor);
  if (far_series_) {
    const double d_far = far_series_->distance(s);
    if (d_far < far_series_->radius) return far_series_->value(d_far);
  }
  return std::max(0.0, path_.eval_component(locate_tau(s), 1));
}

double ThresholdCurve::slope(double s) const {
  const double g = (*this)(s);
  const double sign = branch_ == Branch::P ? 1.0 : -1.0;
  const double num = sign * nu_ * g + 1.0 - c_ * s;
  if (g == 0.0) return num >= 0.0 ? kInf : -kInf;
  return num / g;
}

double ThresholdCurve::arc_time(double s) const {
  if (!contains(s)) throw InvalidArgument("s outside curve domain");
  return locate_tau(std::clamp(s, s_lo_, s_hi_));
}

std::vector<std::pair<double, double>> ThresholdCurve::samples() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(path_.states().size());
  for (const auto& y : path_.states()) out.emplace_back(y[0], std::max(0.0, y[1]));
  if (branch_ == Branch::N) std::reverse(out.begin(), out.end());
  return out;
}

ThresholdCurve solve_P(double c1, double nu, double s_max) {
  check_curve_inputs(c1, nu);
  if (!(s_max > 0.0)) throw InvalidArgument("s_max must be > 0");

  ode::VectorField f = [c1, nu](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = nu * y[1] + 1.0 - c1 * y[0];
  };
  std::vector<ode::EventSpec> events{
      {"root", [](double, std::span<const double> y) { return y[1]; }, ode::Direction::decreasing,
       true},
      {"s_max", [s_max](double, std::span<const double> y) { return y[0] - s_max; },
       ode::Direction::increasing, true},
  };
  ThresholdCurve curve;
  curve.branch_ = Branch::P;
  curve.c_ = c1;
  curve.nu_ = nu;
  curve.anchor_ = 0.0;
  curve.path_ = ode::integrate(f, {0.0, 0.0}, 0.0, arc_horizon(c1, nu), curve_options(), events);
  if (!curve.path_.event()) throw NumericalError("P-curve did not reach its endpoint");
  curve.s_lo_ = 0.0;
  curve.s_hi_ = curve.path_.final_state()[0];
  curve.anchor_series_ = make_series(0.0, +1, 1.0, +1, c1, nu);
  if (curve.path_.event()->id == "root") {
    const double root = curve.s_hi_;
    curve.far_series_ = make_series(root, -1, c1 * root - 1.0, -1, c1, nu);
  }
  return curve;
}

ThresholdCurve solve_N(double c2, double nu, double s_star) {
  check_curve_inputs(c2, nu);
  if (!(s_star > 1.0 / c2) || !std::isfinite(s_star)) {
    throw InvalidArgument("s_star must be finite and exceed 1/c2");
  }
  ode::VectorField f = [c2, nu](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = -y[1];
    dy[1] = nu * y[1] + c2 * y[0] - 1.0;
  };
  std::vector<ode::EventSpec> events{
      {"root", [](double, std::span<const double> y) { return y[1]; }, ode::Direction::decreasing,
       true},
      {"s_zero", [](double, std::span<const double> y) { return y[0]; }, ode::Direction::decreasing,
       true},
  };
  ThresholdCurve curve;
  curve.branch_ = Branch::N;
  curve.c_ = c2;
  curve.nu_ = nu;
  curve.anchor_ = s_star;
  curve.path_ = ode::integrate(f, {s_star, 0.0}, 0.0, arc_horizon(c2, nu), curve_options(), events);
  if (!curve.path_.event()) throw NumericalError("N-curve did not reach its endpoint");
  curve.s_hi_ = s_star;
  curve.s_lo_ = curve.path_.final_state()[0];
  curve.anchor_series_ = make_series(s_star, -1, c2 * s_star - 1.0, +1, c2, nu);
  if (curve.path_.event()->id == "root") {
    const double root = curve.s_lo_;
    curve.far_series_ = make_series(root, +1, 1.0 - c2 * root, -1, c2, nu);
  }
  return curve;
}

double gamma_exponent(double c, double nu) {
  if (overdamped(c, nu)) return kNaN;
  return std::numbers::pi * nu / std::sqrt(4.0 * c - nu * nu);
}

double s_tilde(double c1, double nu) {
  if (overdamped(c1, nu)) return kInf;
  return (1.0 + std::exp(gamma_exponent(c1, nu))) / c1;
}

DomainReport domain_endpoints(double c1, double c2, double nu, double s_star) {
  check_curve_inputs(c1, nu);
  check_curve_inputs(c2, nu);
  if (!(s_star > 1.0 / c2)) throw InvalidArgument("s_star must exceed 1/c2");
  DomainReport report;
  report.s_star = s_star;
  report.gamma1 = gamma_exponent(c1, nu);
  report.gamma2 = gamma_exponent(c2, nu);
  report.regime_P = overdamped(c1, nu) ? Regime::unbounded : Regime::bounded;
  report.regime_N = overdamped(c2, nu) ? Regime::unbounded : Regime::bounded;
  report.s_tilde = s_tilde(c1, nu);
  report.s_star_star = report.regime_N == Regime::unbounded
                           ? -kInf
                           : 1.0 / c2 - (s_star - 1.0 / c2) * std::exp(report.gamma2);
  return report;
}

ClosingReport closing_condition(const Params& raw) {
  const Params p = validate_params(raw);
  if (!p.repulsive()) throw InvalidArgument("closing condition requires k = +1");
  ClosingReport report;
  if (overdamped(p.c_plus, p.nu)) {
    report.holds = true;
    report.case_tag = "rep-#1";
    report.s_plus = kInf;
    report.s_star_star = -kInf;
    report.sign_test_holds = true;
    return report;
  }
  report.s_plus = s_tilde(p.c_plus, p.nu);
  const bool valid_anchor = report.s_plus > 1.0 / p.c_minus;
  if (overdamped(p.c_minus, p.nu)) {
    report.holds = report.s_plus * p.c_minus > 1.0;
    if (report.holds) report.case_tag = "rep-#2.1";
  } else {
    report.holds = std::exp(gamma_exponent(p.c_minus, p.nu)) * (report.s_plus * p.c_minus - 1.0) >= 1.0;
    if (report.holds) report.case_tag = "rep-#2.2";
  }
  if (!overdamped(p.c_minus, p.nu)) {
    // Endpoint formula; for anchors at or below 1/c- it gives s** >= 1/c- > 0.
    const double inv = 1.0 / p.c_minus;
    report.s_star_star = inv - (report.s_plus - inv) * std::exp(gamma_exponent(p.c_minus, p.nu));
  } else {
    report.s_star_star = valid_anchor ? -kInf : kNaN;
  }
  report.sign_test_holds = report.s_star_star <= 0.0;
  return report;
}

double lyapunov_eval(const ThresholdCurve& curve, const PhasePoint& point) {
  const double g = curve(point.s);
  return curve.branch() == Branch::P ? point.w + g : point.w - g;
}

namespace {

// Traces P to its closed-form endpoint when that is moderate, else to s_max.
ThresholdCurve trace_P(double c, double nu, double s_max) {
  const double end = s_tilde(c, nu);
  const double limit = std::isfinite(end) && end <= kMaxTracedEndpoint ? std::max(s_max, 2.0 * end)
                                                                       : s_max;
  return solve_P(c, nu, limit);
}

double anchor_for_N(const ThresholdCurve& p, double c, double nu) {
  const double s = p.closed() ? p.s_hi() : s_tilde(c, nu);
  if (!std::isfinite(s) || s > kMaxTracedEndpoint) {
    throw InvalidArgument("threshold domain too large to trace");
  }
  return s;
}

}  // namespace

RepulsiveThresholds::RepulsiveThresholds(const Params& params, double s_max)
    : params_(validate_params(params)),
      s_max_(s_max),
      closing_(closing_condition(params)),
      p_minus_(trace_P(params.c_minus, params.nu, s_max)),
      p_plus_(trace_P(params.c_plus, params.nu, s_max)) {
  if (!(s_max > 0.0)) throw InvalidArgument("s_max must be > 0");
  const double nu = params_.nu;
  if (!overdamped(params_.c_minus, nu)) {
    n_plus_ = solve_N(params_.c_plus, nu, anchor_for_N(p_minus_, params_.c_minus, nu));
  }
  if (!overdamped(params_.c_plus, nu)) {
    const double s_star = anchor_for_N(p_plus_, params_.c_plus, nu);
    if (s_star > 1.0 / params_.c_minus) n_minus_ = solve_N(params_.c_minus, nu, s_star);
  }
}

double RepulsiveThresholds::band_margin(const PhasePoint& point, const ThresholdCurve& lower,
                                        const std::optional<ThresholdCurve>& upper) const {
  const double s = point.s;
  const double w = point.w;
  if (lower.closed() && s > lower.s_hi()) return -std::hypot(w, s - lower.s_hi());
  if (!lower.contains(s)) throw InvalidArgument("s outside traced curve range");
  double m = w + lower(s);
  if (upper) {
    if (upper->contains(s)) {
      m = std::min(m, (*upper)(s) - w);
    } else if (s < upper->s_lo()) {
      m = std::min(m, s - upper->s_lo());
    } else {
      m = std::min(m, -std::hypot(w, s - upper->s_hi()));
    }
  }
  return m;
}

double RepulsiveThresholds::super_margin(const PhasePoint& point) const {
  return band_margin(point, p_minus_, n_plus_);
}

double RepulsiveThresholds::sub_margin(const PhasePoint& point) const {
  if (overdamped(params_.c_plus, params_.nu)) return band_margin(point, p_plus_, std::nullopt);
  if (!n_minus_) return -kInf;
  return band_margin(point, p_plus_, n_minus_);
}

Verdict RepulsiveThresholds::classify(const PhasePoint& point, double tol) const {
  if (!(point.s > 0.0)) throw InvalidArgument("phase point needs s > 0");
  Verdict verdict;
  const double sup = super_margin(point);
  if (sup < -tol) {
    verdict.label = Label::supercritical;
    verdict.margin = sup;
    verdict.case_tag = overdamped(params_.c_minus, params_.nu) ? "rep-sup-#1" : "rep-sup-#2";
    return verdict;
  }
  if (closing_.holds) {
    const double sub = sub_margin(point);
    verdict.margin = sub;
    if (sub > tol) {
      verdict.label = Label::subcritical;
      verdict.case_tag = closing_.case_tag;
    }
    return verdict;
  }
  verdict.margin = sup;
  return verdict;
}

Verdict classify_point(const PhasePoint& point, const Params& params, double tol) {
  if (!(point.s > 0.0)) throw InvalidArgument("phase point needs s > 0");
  const RepulsiveThresholds thresholds(params, std::max(4.0, 2.0 * point.s));
  return thresholds.classify(point, tol);
}

std::optional<double> breakdown_time_bound(const PhasePoint& point,
                                           const RepulsiveThresholds& thresholds, double tol) {
  if (!(point.s > 0.0)) return std::nullopt;
  if (thresholds.super_margin(point) > tol) return std::nullopt;
  const Params& p = thresholds.params();
  if (overdamped(p.c_minus, p.nu)) {
    const ThresholdCurve& curve = thresholds.p_minus();
    return quad::integrate_sqrt_left([&](double s) { return 1.0 / curve(s); }, 0.0, point.s, 1e-10);
  }
  const double mu_minus = std::sqrt(p.c_minus - 0.25 * p.nu * p.nu);
  const double mu_plus = std::sqrt(p.c_plus - 0.25 * p.nu * p.nu);
  return std::numbers::pi / mu_minus + 0.5 * std::numbers::pi / std::sqrt(p.c_minus) +
         std::numbers::pi / mu_plus;
}

std::optional<double> breakdown_time_bound(const PhasePoint& point, const Params& params) {
  if (!(point.s > 0.0)) return std::nullopt;
  const RepulsiveThresholds thresholds(params, std::max(4.0, 2.0 * point.s));
  return breakdown_time_bound(point, thresholds, 1e-9);
}

PhasePoint SweepGrid::cell(std::size_t index) const {
  const std::size_t is = index / nw;
  const std::size_t iw = index % nw;
  const double dw = (w_hi - w_lo) / static_cast<double>(nw);
  const double ds = (s_hi - s_lo) / static_cast<double>(ns);
  return {w_lo + (static_cast<double>(iw) + 0.5) * dw, s_lo + (static_cast<double>(is) + 0.5) * ds};
}

std::vector<SweepCell> region_sweep(const SweepGrid& grid, const RepulsiveThresholds& thresholds,
                                    double tol, unsigned jobs) {
  if (!(grid.s_lo >= 0.0) || !(grid.s_hi > grid.s_lo) || !(grid.w_hi > grid.w_lo)) {
    throw InvalidArgument("sweep grid needs w_lo < w_hi and 0 <= s_lo < s_hi");
  }
  if (grid.s_hi > thresholds.s_max() && !thresholds.p_minus().closed()) {
    throw InvalidArgument("sweep grid exceeds traced curve range");
  }
  std::vector<SweepCell> cells(grid.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    cells[i].point = grid.cell(i);
    cells[i].verdict = thresholds.classify(cells[i].point, tol);
  });
  return cells;
}

std::vector<SweepCell> region_sweep(const SweepGrid& grid, const Params& params, double tol,
                                    unsigned jobs) {
  const RepulsiveThresholds thresholds(params, std::max(1.0, grid.s_hi));
  return region_sweep(grid, thresholds, tol, jobs);
}

}  // namespace epct
