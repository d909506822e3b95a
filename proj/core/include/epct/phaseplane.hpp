// Simulation of the reduced (w, s) system with blow-up detection and
// a-posteriori comparison checks.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epct/core.hpp"
#include "epct/ode.hpp"
#include "epct/thresholds.hpp"

namespace epct {

struct BlowUp {
  double t = 0.0;
  double w = 0.0;
};

struct BoundCheck {
  double bound = 0.0;
  bool satisfied = false;  // blow-up time <= bound (+1e-6)
};

struct SimOutcome {
  PhasePoint start;
  Params params;
  ode::Trajectory trajectory;  // state (w, s)
  std::optional<BlowUp> blowup;
  double horizon = 0.0;
  std::optional<BoundCheck> bound_check;
};

/// Defaults for (w, s) runs: tight tolerances, max_step 0.5.
ode::Options simulation_options();

/// w' = -nu w + k (1 - c(t) s), s' = w, stopped when s reaches 0.
SimOutcome simulate_ws(const PhasePoint& start, const Params& params, const Background& background,
                       double horizon, const ode::Options& opts = simulation_options());

/// Attaches the breakdown bound for repulsive super-critical starts.
void attach_bound_check(SimOutcome& outcome, const RepulsiveThresholds& thresholds);

/// Sinusoid with range inside [c-, c+]: mean, amplitude, omega in [0.2, 5] and
/// phase drawn from a mt19937_64 seeded by (seed, stream). Identical on every platform.
Background random_admissible_sinusoid(const Params& params, std::uint64_t seed,
                                      std::uint64_t stream = 0);

/// Start (0, 1), nu = 0, c(t) = 1 + epsilon sin(t + phase).
SimOutcome resonance_demo(double epsilon, double horizon, double phase = 0.0,
                          const ode::Options& opts = simulation_options());

enum class CompareMode { weak, strong };

struct LyapunovCheck {
  std::string function;  // L_P-, L_N+, L_P+ or L_N-
  bool precondition_met = false;
  double start_value = 0.0;
  double max_violation = 0.0;
  std::optional<double> first_violation_t;
  std::optional<double> domain_exit_t;
  double checked_until = 0.0;
  [[nodiscard]] bool preserved(double tol) const { return precondition_met && max_violation <= tol; }
};

struct ComparisonReport {
  CompareMode mode = CompareMode::weak;
  double tol = 1e-7;
  std::vector<LyapunovCheck> checks;
  [[nodiscard]] bool all_preserved() const;
};

/// Samples the trajectory at 1000 dense points and checks the sign
/// preservation of the weak (P-, N+) or strong (P+, N-) Lyapunov functions.
ComparisonReport check_comparison(const SimOutcome& outcome, const RepulsiveThresholds& thresholds,
                                  CompareMode mode, double tol = 1e-7, std::size_t samples = 1000);
ComparisonReport check_comparison(const SimOutcome& outcome, const Params& params, CompareMode mode,
                                  double tol = 1e-7);

/// arctan(sqrt(c-) (s - 1/c-) / w); throws for w = 0.
double theta_minus(const PhasePoint& point, double c_minus);

}  // namespace epct
