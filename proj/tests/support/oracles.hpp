// Closed-form reference values, written independently of the library.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// s'' = nu s' + 1 - c s, the second-order form shared by both curve systems
// in arc time. Returns (s, ds/dtau) for the solution with s(0) = s0, s'(0) = 0.
inline std::pair<double, double> linear_arc(double c, double nu, double s0, double tau) {
  const double a = s0 - 1.0 / c;
  const double half = 0.5 * nu;
  const double disc = half * half - c;
  if (disc < 0.0) {
    const double mu = std::sqrt(-disc);
    const double e = std::exp(half * tau);
    const double cs = std::cos(mu * tau);
    const double sn = std::sin(mu * tau);
    return {1.0 / c + a * e * (cs - half / mu * sn), -a * e * sn * c / mu};
  }
  if (disc == 0.0) {
    const double e = std::exp(half * tau);
    return {1.0 / c + a * e * (1.0 - half * tau), -a * e * half * half * tau};
  }
  const double r1 = half + std::sqrt(disc);
  const double r2 = half - std::sqrt(disc);
  const double A = -a * r2 / (r1 - r2);
  const double B = a * r1 / (r1 - r2);
  return {1.0 / c + A * std::exp(r1 * tau) + B * std::exp(r2 * tau),
          A * r1 * std::exp(r1 * tau) + B * r2 * std::exp(r2 * tau)};
}

// P-curve parametrically: s(tau), g(tau) = ds/dtau, from (0, 0).
inline std::pair<double, double> P_param(double c, double nu, double tau) {
  return linear_arc(c, nu, 0.0, tau);
}

// N-curve parametrically from (s_star, 0): ds/dtau = -g.
inline std::pair<double, double> N_param(double c, double nu, double s_star, double tau) {
  const auto [s, ds] = linear_arc(c, nu, s_star, tau);
  return {s, -ds};
}

inline double mu(double c, double nu) { return std::sqrt(c - 0.25 * nu * nu); }

// Exponent pi nu / sqrt(4c - nu^2).
inline double gamma(double c, double nu) { return pi * nu / std::sqrt(4.0 * c - nu * nu); }

// Upper endpoint of Dom(P).
inline double s_tilde(double c, double nu) { return (1.0 + std::exp(gamma(c, nu))) / c; }

// Lower endpoint of Dom(N) anchored at s_star.
inline double s_star_star(double c, double nu, double s_star) {
  return 1.0 / c - (s_star - 1.0 / c) * std::exp(gamma(c, nu));
}

// Inverts s(tau) on the monotone arc by bisection and returns g at s.
template <typename Param>
double g_at(Param param, double s, double tau_hi, bool decreasing = false) {
  double lo = 0.0;
  double hi = tau_hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const bool below = param(mid).first < s;
    ((below != decreasing) ? lo : hi) = mid;
  }
  return param(0.5 * (lo + hi)).second;
}

// g of the P-curve at s (bounded or unbounded regime).
inline double P_g(double c, double nu, double s) {
  const double tau_hi = nu < 2.0 * std::sqrt(c) ? pi / mu(c, nu) : 60.0;
  return g_at([&](double t) { return P_param(c, nu, t); }, s, tau_hi);
}

inline double N_g(double c, double nu, double s_star, double s) {
  const double tau_hi = nu < 2.0 * std::sqrt(c) ? pi / mu(c, nu) : 60.0;
  return g_at([&](double t) { return N_param(c, nu, s_star, t); }, s, tau_hi, true);
}

// Undamped constant background, repulsive: sharp threshold g = sqrt(s (2 - c s)).
inline double sharp_threshold(double c, double s) { return std::sqrt(s * (2.0 - c * s)); }

// Undamped constant-background repulsive (w, s) solution.
inline std::pair<double, double> ws_undamped(double c, double w0, double s0, double t) {
  const double r = std::sqrt(c);
  const double s = 1.0 / c + (s0 - 1.0 / c) * std::cos(r * t) + w0 / r * std::sin(r * t);
  const double w = -(s0 - 1.0 / c) * r * std::sin(r * t) + w0 * std::cos(r * t);
  return {w, s};
}

// First zero of s(t) for the undamped repulsive system, or +inf.
inline double ws_undamped_blowup(double c, double w0, double s0) {
  const double r = std::sqrt(c);
  const double a = s0 - 1.0 / c;
  const double b = w0 / r;
  const double amp = std::hypot(a, b);
  if (amp < 1.0 / c) return std::numeric_limits<double>::infinity();
  // 1/c + amp cos(r t - phi) = 0 with phi = atan2(b, a).
  const double phi = std::atan2(b, a);
  const double base = std::acos(-1.0 / (c * amp));
  double best = std::numeric_limits<double>::infinity();
  for (int k = -1; k <= 2; ++k) {
    for (double root : {phi + base + 2.0 * pi * k, phi - base + 2.0 * pi * k}) {
      const double t = root / r;
      if (t >= 0.0 && t < best) best = t;
    }
  }
  return best;
}

// Attractive constant background: (w, s - 1/c)' = [[-nu, c], [1, 0]] (w, s - 1/c).
// Matrix exponential by Sylvester's formula (distinct real eigenvalues).
inline std::pair<double, double> ws_attractive(double nu, double c, double w0, double s0, double t) {
  const double root = std::sqrt(nu * nu + 4.0 * c);
  const double l1 = 0.5 * (-nu + root);
  const double l2 = 0.5 * (-nu - root);
  const std::array<double, 4> A{-nu, c, 1.0, 0.0};
  const double e1 = std::exp(l1 * t) / (l1 - l2);
  const double e2 = std::exp(l2 * t) / (l1 - l2);
  std::array<double, 4> M{};
  for (int i = 0; i < 4; ++i) {
    const double id = (i == 0 || i == 3) ? 1.0 : 0.0;
    M[i] = e1 * (A[i] - l2 * id) - e2 * (A[i] - l1 * id);
  }
  const double y = s0 - 1.0 / c;
  return {M[0] * w0 + M[1] * y, M[2] * w0 + M[3] * y + 1.0 / c};
}

// Undamped repulsive Jacobian along a characteristic.
inline double gamma_repulsive(double rho0, double du0, double c, double t) {
  const double r = std::sqrt(c);
  return rho0 / c + (1.0 - rho0 / c) * std::cos(r * t) + du0 * std::sin(r * t) / r;
}

// Case analysis of the closing condition.
inline bool closing_cases(double c_minus, double c_plus, double nu) {
  if (nu >= 2.0 * std::sqrt(c_plus)) return true;
  const double s_plus = s_tilde(c_plus, nu);
  if (nu >= 2.0 * std::sqrt(c_minus)) return s_plus * c_minus > 1.0;
  return std::exp(gamma(c_minus, nu)) * (s_plus * c_minus - 1.0) >= 1.0;
}

// Distance of (c-, c+, nu) to the switching surfaces of the case analysis.
inline double closing_boundary_distance(double c_minus, double c_plus, double nu) {
  double d = std::min(std::abs(nu - 2.0 * std::sqrt(c_plus)), std::abs(nu - 2.0 * std::sqrt(c_minus)));
  if (nu < 2.0 * std::sqrt(c_plus)) {
    const double s_plus = s_tilde(c_plus, nu);
    d = std::min(d, std::abs(s_plus * c_minus - 1.0));
    if (nu < 2.0 * std::sqrt(c_minus)) {
      d = std::min(d, std::abs(std::exp(gamma(c_minus, nu)) * (s_plus * c_minus - 1.0) - 1.0));
    }
  }
  return d;
}

inline double U(double r) { return (r - 1.0) * std::exp(r) + 1.0; }

// Cubic Taylor value of V near 0.
inline double V_taylor(double z) { return 0.5 * z * z + z * z * z / 9.0; }

// Far-field velocity jump limit for rho0 = c + 1/(1 + x^2), u0 = 0.
inline double jump_limit(double c, double t) { return pi * std::sin(std::sqrt(c) * t) / std::sqrt(c); }

}  // namespace oracle
