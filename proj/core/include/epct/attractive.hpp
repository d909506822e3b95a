// Attractive (k = -1) dynamics: eigen data, exact constant-background
// solution, variable-background thresholds and the borderline residual.
#pragma once

#include <array>
#include <vector>

#include "epct/core.hpp"

namespace epct {

/// Linearization of (w, s - 1/c) about the equilibrium (0, 1/c).
struct EigenData {
  double lambda_s = 0.0;  // stable, (-nu - sqrt(nu^2 + 4c)) / 2
  double lambda_u = 0.0;  // unstable, (-nu + sqrt(nu^2 + 4c)) / 2
  std::array<double, 2> X_s{};  // (lambda_s, 1) in (w, s) coordinates
  std::array<double, 2> X_u{};
};

EigenData eigensystem(double nu, double c_bar);

/// Exact state at time t from the exponential evolution of the Lyapunov
/// coordinates L_s = w - lambda_s (s - 1/c), L_u = w - lambda_u (s - 1/c).
PhasePoint exact_attractive_solution(const PhasePoint& start, double nu, double c_bar, double t);

/// L_s(w, s) = w - lambda_s (s - 1/c) for the given (nu, c).
double attractive_lyapunov(const PhasePoint& point, double nu, double c);

/// Sub-critical iff L_s against c- is >= 0 (closed side); super-critical iff
/// L_s against c+ is < -tol; indeterminate between the two lines.
Verdict classify_attractive(const PhasePoint& point, const Params& params, double tol);

struct BorderlineReport {
  bool is_borderline = false;
  double max_residual = 0.0;
};

/// max |lambda_u u0'(x) - (rho0(x) - c-)| over the samples.
BorderlineReport borderline_check(const std::vector<double>& rho0, const std::vector<double>& du0,
                                  double nu, double c_minus, double tol);

}  // namespace epct
