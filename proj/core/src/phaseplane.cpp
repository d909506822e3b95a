#include "epct/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace epct {

namespace {
constexpr double kTouchTol = 1e-9;
}  // namespace

ode::Options simulation_options() {
  ode::Options opts;
  opts.rel_tol = 1e-11;
  opts.abs_tol = 1e-13;
  opts.max_step = 0.5;
  return opts;
}

SimOutcome simulate_ws(const PhasePoint& start, const Params& raw, const Background& background,
                       double horizon, const ode::Options& opts) {
  const Params params = validate_params(raw);
  if (!(start.s > 0.0)) throw InvalidArgument("phase point needs s > 0");
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be > 0");
  if (!background.fits(params)) throw InvalidArgument("background outside declared bounds");

  const double nu = params.nu;
  const double k = params.k;
  ode::VectorField f = [&background, nu, k](double t, std::span<const double> y,
                                            std::span<double> dy) {
    dy[0] = -nu * y[0] + k * (1.0 - background(t) * y[1]);
    dy[1] = y[0];
  };
  // Tangential contact (s touching 0 with w = 0) counts as blow-up too.
  std::vector<ode::EventSpec> events{
      {"blowup", [](double, std::span<const double> y) { return y[1]; }, ode::Direction::decreasing,
       true, [](double, std::span<const double> y) { return y[0]; }, kTouchTol}};

  SimOutcome outcome;
  outcome.start = start;
  outcome.params = params;
  outcome.horizon = horizon;
  outcome.trajectory = ode::integrate(f, {start.w, start.s}, 0.0, horizon, opts, events);
  if (const auto& ev = outcome.trajectory.event()) outcome.blowup = BlowUp{ev->t, ev->state[0]};
  return outcome;
}

void attach_bound_check(SimOutcome& outcome, const RepulsiveThresholds& thresholds) {
  const auto bound = breakdown_time_bound(outcome.start, thresholds, 1e-9);
  if (!bound) {
    outcome.bound_check.reset();
    return;
  }
  BoundCheck check;
  check.bound = *bound;
  check.satisfied = outcome.blowup && outcome.blowup->t <= *bound + 1e-6;
  outcome.bound_check = check;
}

Background random_admissible_sinusoid(const Params& params, std::uint64_t seed,
                                      std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  // Standard distributions are implementation-defined; map the raw bits directly.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double lo = params.c_minus;
  const double hi = params.c_plus;
  const double mean = lo + (hi - lo) * unit();
  const double amplitude = std::min(mean - lo, hi - mean) * unit();
  const double omega = 0.2 + 4.8 * unit();
  const double phase = 2.0 * std::numbers::pi * unit();
  return Background::sinusoid(mean, amplitude, omega, phase);
}

SimOutcome resonance_demo(double epsilon, double horizon, double phase, const ode::Options& opts) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in [0, 1)");
  const Params params{0.0, +1, 1.0 - epsilon, 1.0 + epsilon};
  return simulate_ws({0.0, 1.0}, params, Background::sinusoid(1.0, epsilon, 1.0, phase), horizon,
                     opts);
}

bool ComparisonReport::all_preserved() const {
  return std::all_of(checks.begin(), checks.end(),
                     [this](const LyapunovCheck& c) { return c.preserved(tol); });
}

namespace {

// One sign-preservation check. `sign` = +1 demands L <= 0, -1 demands L >= 0
// (weak); strict variants compare against -tol in the same orientation.
LyapunovCheck run_check(const std::string& name, const ThresholdCurve* curve, double sign,
                        const SimOutcome& outcome, double tol, std::size_t samples) {
  LyapunovCheck check;
  check.function = name;
  if (curve == nullptr) return check;
  const auto& traj = outcome.trajectory;
  check.start_value = lyapunov_eval(*curve, outcome.start);
  // Precondition: sign * L(start) <= 0 within tol.
  check.precondition_met = sign * check.start_value <= tol;
  if (!check.precondition_met) return check;

  const double t_end = traj.t_end();
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(samples);
    const auto y = traj.eval(t);
    const double s = std::max(y[1], 0.0);
    if (!curve->contains(s, 1e-10)) {
      check.domain_exit_t = t;
      break;
    }
    const double violation = sign * lyapunov_eval(*curve, {y[0], s});
    check.checked_until = t;
    if (violation > check.max_violation) check.max_violation = violation;
    if (violation > tol && !check.first_violation_t) check.first_violation_t = t;
  }
  return check;
}

}  // namespace

ComparisonReport check_comparison(const SimOutcome& outcome, const RepulsiveThresholds& thresholds,
                                  CompareMode mode, double tol, std::size_t samples) {
  if (!outcome.params.repulsive()) throw InvalidArgument("comparison checks need k = +1");
  if (outcome.trajectory.times().empty()) throw InvalidArgument("empty trajectory");
  ComparisonReport report;
  report.mode = mode;
  report.tol = tol;
  auto ptr = [](const std::optional<ThresholdCurve>& c) { return c ? &*c : nullptr; };
  if (mode == CompareMode::weak) {
    report.checks.push_back(run_check("L_P-", &thresholds.p_minus(), +1.0, outcome, tol, samples));
    report.checks.push_back(run_check("L_N+", ptr(thresholds.n_plus()), -1.0, outcome, tol, samples));
  } else {
    // Strict preservation: L_P+ > 0 and L_N- < 0, i.e. -L_P+ < 0 and L_N- < 0.
    auto strict = [&](const std::string& name, const ThresholdCurve* curve, double sign) {
      LyapunovCheck c = run_check(name, curve, sign, outcome, tol, samples);
      if (c.precondition_met && sign * c.start_value >= 0.0) c.precondition_met = false;
      return c;
    };
    report.checks.push_back(strict("L_P+", &thresholds.p_plus(), -1.0));
    report.checks.push_back(strict("L_N-", ptr(thresholds.n_minus()), +1.0));
  }
  return report;
}

ComparisonReport check_comparison(const SimOutcome& outcome, const Params& params, CompareMode mode,
                                  double tol) {
  double s_top = 1.0;
  for (const auto& y : outcome.trajectory.states()) s_top = std::max(s_top, y[1]);
  const RepulsiveThresholds thresholds(params, 1.1 * s_top + 1.0);
  return check_comparison(outcome, thresholds, mode, tol);
}

double theta_minus(const PhasePoint& point, double c_minus) {
  if (point.w == 0.0) throw InvalidArgument("angle undefined");
  if (!(c_minus > 0.0)) throw InvalidArgument("c_minus must be > 0");
  const double r = std::sqrt(c_minus);
  return std::atan(r * (point.s - 1.0 / c_minus) / point.w);
}

}  // namespace epct
