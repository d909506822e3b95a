// Constant-background Lagrangian solver for the full 1D system plus the
// neutrality, non-existence and anomalous-solution diagnostics.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epct/core.hpp"
#include "epct/ode.hpp"

namespace epct {

/// Serializable description of an initial datum (rho0, u0).
///
/// kinds: uniform (rho0 = c_bar, u0 = 0); gaussian (rho0 = c_bar + a x e^{-x^2},
/// u0 = b e^{-x^2}); density_bump (rho0 = c_bar + a e^{-x^2}, u0 = b e^{-x^2});
/// anomalous (rho0 = c_bar, u0 = sin x (1 + x^2)^{-3/8}); nonexistence
/// (rho0 = c_bar + 1/(1 + x^2), u0 = 0); table (linear interpolation of samples).
struct DatumSpec {
  std::string kind = "uniform";
  double c_bar = 1.0;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> x, rho, u;
  bool operator==(const DatumSpec&) const = default;

  static DatumSpec closed_form(std::string kind, double c_bar, double a = 0.0, double b = 0.0) {
    DatumSpec spec;
    spec.kind = std::move(kind);
    spec.c_bar = c_bar;
    spec.a = a;
    spec.b = b;
    return spec;
  }
};

class InitialDatum {
 public:
  explicit InitialDatum(DatumSpec spec);

  static InitialDatum uniform(double c_bar) { return InitialDatum(DatumSpec::closed_form("uniform", c_bar)); }
  static InitialDatum gaussian(double c_bar, double a, double b) {
    return InitialDatum(DatumSpec::closed_form("gaussian", c_bar, a, b));
  }
  static InitialDatum anomalous(double c_bar) { return InitialDatum(DatumSpec::closed_form("anomalous", c_bar)); }
  static InitialDatum nonexistence(double c_bar) { return InitialDatum(DatumSpec::closed_form("nonexistence", c_bar)); }

  [[nodiscard]] const DatumSpec& spec() const { return spec_; }
  [[nodiscard]] double rho0(double x) const { return rho0_(x); }
  [[nodiscard]] double u0(double x) const { return u0_(x); }
  [[nodiscard]] double du0(double x) const { return du0_(x); }

 private:
  DatumSpec spec_;
  std::function<double(double)> rho0_, u0_, du0_;
};

/// Undamped closed form of the Jacobian along the characteristic from alpha.
double gamma_exact(const InitialDatum& datum, double c_bar, int k, double t, double alpha);

/// Lagrangian snapshot: every field is indexed by label alpha.
struct FluidState {
  double t = 0.0;
  std::vector<double> alpha, x, rho, u, Gamma, E;
};

struct LabelBlowUp {
  double t = 0.0;
  double alpha = 0.0;
  std::size_t index = 0;
};

struct CharacteristicsOptions {
  ode::Options ode = [] {
    ode::Options o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-13;
    o.max_step = 0.25;
    return o;
  }();
  /// Snapshot times; empty selects 11 uniform times on [0, horizon].
  std::vector<double> snapshot_times;
  double neutrality_tol = 1e-8;
  double decay_tol = 1e-6;
  unsigned jobs = 1;
};

struct CharacteristicsResult {
  std::vector<FluidState> states;  // snapshots strictly before the first blow-up
  std::optional<LabelBlowUp> blowup;
  /// max |Gamma - rho0 s| over labels and snapshots (independent propagation check).
  double gamma_consistency = 0.0;
};

/// Integrates (x, u, E, Gamma, w, s) per label with u' = -nu u + k E,
/// E' = -c u, Gamma' = Gamma w / s and the reduced (w, s) system.
CharacteristicsResult solve_characteristics(const InitialDatum& datum, double c_bar, int k,
                                            double nu, const UniformGrid& labels, double horizon,
                                            const CharacteristicsOptions& opts = {});

struct NeutralityReport {
  std::vector<double> t;
  std::vector<double> integral;        // int (rho - c) dx, Lagrangian form
  std::vector<double> l1_fluctuation;  // int |rho - c| dx
  std::vector<double> total_variation; // TV of u
  double du0_integral = 0.0;
  bool du0_neutral = false;
};

NeutralityReport neutrality_report(const std::vector<FluidState>& states, double c_bar,
                                   double tol = 1e-8);

struct AnomalousReport {
  double t = 0.0;
  double c_bar = 1.0;
  std::vector<double> R;
  std::vector<double> J, L1;                  // int (Gamma - 1), int |Gamma - 1|
  std::vector<double> control_J, control_L1;  // Schwartz control u0 = e^{-x^2}
  double spread_J = 0.0, spread_L1 = 0.0;
  double control_spread_J = 0.0, control_spread_L1 = 0.0;
  bool non_convergent = false;  // spread_L1 > 10 * control_spread_L1
};

AnomalousReport anomalous_demo(const std::vector<double>& R_list, double t, double c_bar);

struct NonexistenceReport {
  double t = 0.0;
  double c_bar = 1.0;
  std::vector<double> R;
  std::vector<double> delta;
  double limit = 0.0;
  bool limit_nonzero = false;
};

NonexistenceReport nonexistence_demo(double c_bar, double t, const std::vector<double>& R_list);

}  // namespace epct
