// Threshold curves g = sqrt(2P), sqrt(2N), their domains, the closing
// condition, and the repulsive sub/super-critical classification.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "epct/core.hpp"
#include "epct/ode.hpp"

namespace epct {

enum class Branch { P, N };
enum class Regime { unbounded, bounded };

const char* to_string(Branch branch);
const char* to_string(Regime regime);

/// Local expansion g = sqrt(2 kappa d) (1 + a sqrt(d) + b d) around a zero of g,
/// with d >= 0 the distance from the zero into the domain.
struct EndpointSeries {
  double root = 0.0;
  int orientation = +1;  // +1: d = s - root, -1: d = root - s
  double kappa = 0.0;
  double a = 0.0;
  double b = 0.0;
  double radius = 0.0;  // series used for d < radius

  [[nodiscard]] double distance(double s) const { return orientation * (s - root); }
  [[nodiscard]] double value(double d) const;
};

/// P solves g g' = nu g + 1 - c1 s with g(0) = 0; N solves g g' = -nu g + 1 - c2 s
/// with g(s*) = 0. Both are traced in the regular arc-time parametrization
/// ds/dtau = +-g, so the anchor is an ordinary initial point.
class ThresholdCurve {
 public:
  [[nodiscard]] Branch branch() const { return branch_; }
  [[nodiscard]] double c_param() const { return c_; }
  [[nodiscard]] double nu() const { return nu_; }
  [[nodiscard]] double anchor() const { return anchor_; }
  [[nodiscard]] double s_lo() const { return s_lo_; }
  [[nodiscard]] double s_hi() const { return s_hi_; }
  /// True when g returns to zero at the far end (a genuine domain endpoint);
  /// false when tracing stopped at s_max (P) or at s = 0 (N).
  [[nodiscard]] bool closed() const { return far_series_.has_value(); }
  [[nodiscard]] bool contains(double s, double slack = 1e-12) const;

  /// g(s); throws InvalidArgument outside [s_lo, s_hi].
  [[nodiscard]] double operator()(double s) const;
  /// dg/ds from the curve ODE (infinite at zeros of g).
  [[nodiscard]] double slope(double s) const;
  /// Arc time tau(s) = integral of ds/g from the anchor to s.
  [[nodiscard]] double arc_time(double s) const;
  /// Total arc time over the traced domain.
  [[nodiscard]] double total_arc_time() const { return path_.t_end(); }

  /// Tabulated (s, g) pairs at the accepted integration steps, ascending in s.
  [[nodiscard]] std::vector<std::pair<double, double>> samples() const;

  friend ThresholdCurve solve_P(double c1, double nu, double s_max);
  friend ThresholdCurve solve_N(double c2, double nu, double s_star);

 private:
  ThresholdCurve() = default;
  [[nodiscard]] double locate_tau(double s) const;

  Branch branch_ = Branch::P;
  double c_ = 1.0;
  double nu_ = 0.0;
  double anchor_ = 0.0;
  double s_lo_ = 0.0;
  double s_hi_ = 0.0;
  ode::Trajectory path_;  // state (s, g) over tau
  EndpointSeries anchor_series_;
  std::optional<EndpointSeries> far_series_;
};

/// P-curve on Dom(P) intersected with [0, s_max].
ThresholdCurve solve_P(double c1, double nu, double s_max);
/// N-curve from s_star down to max(s**, 0). Requires s_star > 1/c2.
ThresholdCurve solve_N(double c2, double nu, double s_star);

/// Closed-form exponent pi nu / sqrt(4c - nu^2); NaN when nu >= 2 sqrt(c).
double gamma_exponent(double c, double nu);
/// Closed-form upper end of Dom(P); +inf when nu >= 2 sqrt(c1).
double s_tilde(double c1, double nu);

struct DomainReport {
  double s_tilde = 0.0;      // +inf when regime_P is unbounded
  double s_star = 0.0;
  double s_star_star = 0.0;  // -inf when regime_N is unbounded
  double gamma1 = 0.0;       // NaN when undefined
  double gamma2 = 0.0;
  Regime regime_P = Regime::bounded;
  Regime regime_N = Regime::bounded;
};

DomainReport domain_endpoints(double c1, double c2, double nu, double s_star);

struct ClosingReport {
  bool holds = false;
  std::string case_tag = "none";  // rep-#1, rep-#2.1, rep-#2.2 or none
  double s_plus = 0.0;            // s~ of P with c+; +inf in case #1
  double s_star_star = 0.0;       // lower end of Dom(N) with (c+, c-); NaN if undefined
  bool sign_test_holds = false;   // s** <= 0 evaluated from the endpoint formulas
};

/// Requires a repulsive parameter set.
ClosingReport closing_condition(const Params& params);

/// w + g(s) for a P-curve, w - g(s) for an N-curve.
double lyapunov_eval(const ThresholdCurve& curve, const PhasePoint& point);

/// The four curves of the repulsive construction for one parameter set.
///
/// Super-critical set: complement of -g_{P-} < w < g_{N+} with N+ anchored at
/// s~(c-) (only the P- bound when nu >= 2 sqrt(c-)). Sub-critical set:
/// -g_{P+} < w < g_{N-} with N- anchored at s~(c+) (only the P+ bound when
/// nu >= 2 sqrt(c+)), trusted only when the closing condition holds.
class RepulsiveThresholds {
 public:
  /// `s_max` bounds the traced range of unbounded P-curves.
  RepulsiveThresholds(const Params& params, double s_max);

  [[nodiscard]] const Params& params() const { return params_; }
  [[nodiscard]] const ClosingReport& closing() const { return closing_; }
  [[nodiscard]] double s_max() const { return s_max_; }

  [[nodiscard]] const ThresholdCurve& p_minus() const { return p_minus_; }
  [[nodiscard]] const std::optional<ThresholdCurve>& n_plus() const { return n_plus_; }
  [[nodiscard]] const ThresholdCurve& p_plus() const { return p_plus_; }
  [[nodiscard]] const std::optional<ThresholdCurve>& n_minus() const { return n_minus_; }

  /// Signed w-distance to the super-critical boundary; negative inside the
  /// super-critical set.
  [[nodiscard]] double super_margin(const PhasePoint& point) const;
  /// Signed w-distance to the boundary of the sub-critical construction;
  /// positive inside it. Defined whether or not the closing condition holds.
  [[nodiscard]] double sub_margin(const PhasePoint& point) const;

  /// margin: super_margin for supercritical points, sub_margin otherwise
  /// when the closing condition holds, super_margin when it fails.
  [[nodiscard]] Verdict classify(const PhasePoint& point, double tol) const;

 private:
  double band_margin(const PhasePoint& point, const ThresholdCurve& lower,
                     const std::optional<ThresholdCurve>& upper) const;

  Params params_;
  double s_max_;
  ClosingReport closing_;
  ThresholdCurve p_minus_;
  std::optional<ThresholdCurve> n_plus_;
  ThresholdCurve p_plus_;
  std::optional<ThresholdCurve> n_minus_;
};

Verdict classify_point(const PhasePoint& point, const Params& params, double tol);

/// Upper bound on the blow-up time of a super-critical start; nullopt for
/// points that are not super-critical.
std::optional<double> breakdown_time_bound(const PhasePoint& point, const Params& params);
std::optional<double> breakdown_time_bound(const PhasePoint& point,
                                           const RepulsiveThresholds& thresholds, double tol = 0.0);

/// Cell-centred rectangle in (w, s); cells are emitted row-major with s
/// as the slow index.
struct SweepGrid {
  double w_lo = -3.0;
  double w_hi = 3.0;
  std::size_t nw = 100;
  double s_lo = 0.0;
  double s_hi = 3.0;
  std::size_t ns = 100;

  [[nodiscard]] std::size_t size() const { return nw * ns; }
  [[nodiscard]] PhasePoint cell(std::size_t index) const;
  bool operator==(const SweepGrid&) const = default;
};

struct SweepCell {
  PhasePoint point;
  Verdict verdict;
};

std::vector<SweepCell> region_sweep(const SweepGrid& grid, const Params& params, double tol,
                                    unsigned jobs = 1);
std::vector<SweepCell> region_sweep(const SweepGrid& grid, const RepulsiveThresholds& thresholds,
                                    double tol, unsigned jobs = 1);

}  // namespace epct
