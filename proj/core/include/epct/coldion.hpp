// Cold-ion (Maxwell-Boltzmann electrons) machinery: energy, V-functions,
// potential bounds, nonlinear Poisson solve and the global-regularity check.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "epct/core.hpp"
#include "epct/thresholds.hpp"

namespace epct {

/// U(r) = (r - 1) e^r + 1 >= 0.
double U_eval(double r);

/// V(z) = integral of sqrt(2U) between 0 and z (nonnegative for either sign).
double V_eval(double z);

enum class VBranch { plus, minus };

/// Root of V(z) = x on the chosen half-line.
double V_inverse(VBranch branch, double x);

struct PotentialBounds {
  double c_minus = 1.0;
  double c_plus = 1.0;
};

PotentialBounds potential_bounds(double H0);

/// Newton solve of -phi'' + e^phi = rho (central differences, phi = 0 at both
/// ends). Returns phi on every node. Throws NumericalError("Newton stalled").
std::vector<double> solve_poisson_mb(const std::vector<double>& rho, const UniformGrid& grid,
                                     double tol = 1e-10);

struct ColdIonSetup {
  UniformGrid grid{-20.0, 20.0, 2001};
  std::vector<double> rho0;
  std::vector<double> u0;
  double nu = 0.0;
};

/// Throws InvalidArgument unless sizes match, rho0 > 0 and the far field is (1, 0).
void validate_setup(const ColdIonSetup& setup);

struct EnergyReport {
  double H = 0.0;
  double kinetic = 0.0;
  double field = 0.0;
  double internal = 0.0;
  double c_minus = 1.0;
  double c_plus = 1.0;
  std::vector<double> phi;
};

EnergyReport energy(const ColdIonSetup& setup);

struct RegularityReport {
  bool global = false;
  std::string verdict = "not guaranteed";
  EnergyReport energy;
  ClosingReport closing;
  std::size_t checked_points = 0;
  std::vector<std::size_t> failing_points;
  double min_margin = 0.0;
  std::string details;
};

RegularityReport global_regularity_check(const ColdIonSetup& setup);

/// Undamped breakdown band in (rho0, u0') form:
/// -sqrt(2 rho0 - c-) < u0' < sqrt(2 rho0 - c+ + 4/c- (c+/c- - 1) rho0^2).
/// Returns false when the point lies outside (finite-time breakdown).
bool ion_band_admits(double rho0, double du0, double c_minus, double c_plus);

/// Centred first differences (second-order one-sided at the ends).
std::vector<double> gradient(const std::vector<double>& values, double spacing);

}  // namespace epct
