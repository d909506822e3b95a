#include "epct/coldion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epct/quadrature.hpp"

namespace epct {

double U_eval(double r) {
  if (std::abs(r) < 0.5) {
    // sum_{n>=2} r^n (n - 1) / n!
    double term = r;  // r^n / n! at n = 1
    double sum = 0.0;
    for (int n = 2; n <= 24; ++n) {
      term *= r / n;
      sum += (n - 1) * term;
    }
    return sum;
  }
  return std::max(0.0, (r - 1.0) * std::exp(r) + 1.0);
}

namespace {

double dV(double z) { return std::sqrt(2.0 * U_eval(z)); }

// V on the half-line with sign `dir`, as a function of the magnitude m >= 0.
double V_along(double dir, double m) { return V_eval(dir * m); }

}  // namespace

double V_eval(double z) {
  if (z == 0.0) return 0.0;
  // Substituting r = z u keeps the integrand O(1) for small |z|.
  const double m = std::abs(z);
  return m * m * quad::integrate([&](double u) { return dV(z * u) / m; }, 0.0, 1.0, 1e-13);
}

double V_inverse(VBranch branch, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("V_inverse needs x >= 0");
  if (x == 0.0) return 0.0;
  const double dir = branch == VBranch::plus ? 1.0 : -1.0;
  double lo = 0.0;
  double hi = std::sqrt(2.0 * x);
  while (V_along(dir, hi) < x) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("V_inverse bracket failed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-6 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (V_along(dir, mid) < x ? lo : hi) = mid;
  }
  double m = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double f = V_along(dir, m) - x;
    if (std::abs(f) <= 1e-15 * x) break;
    (f < 0.0 ? lo : hi) = m;
    double next = m - f / dV(dir * m);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - m) <= 1e-16 * m) {
      m = next;
      break;
    }
    m = next;
  }
  return dir * m;
}

PotentialBounds potential_bounds(double H0) {
  if (!(H0 >= 0.0)) throw InvalidArgument("energy H0 must be >= 0");
  return {std::exp(V_inverse(VBranch::minus, H0)), std::exp(V_inverse(VBranch::plus, H0))};
}

std::vector<double> solve_poisson_mb(const std::vector<double>& rho, const UniformGrid& grid,
                                     double tol) {
  const std::size_t n = grid.n;
  if (rho.size() != n || n < 3) throw InvalidArgument("density samples must match a grid of >= 3 nodes");
  if (std::any_of(rho.begin(), rho.end(), [](double r) { return !(r > 0.0); })) {
    throw InvalidArgument("density must be > 0");
  }
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> phi(n, 0.0), trial(n, 0.0), F(n, 0.0), delta(n, 0.0);
  std::vector<double> cprime(n, 0.0), dprime(n, 0.0);

  auto residual = [&](const std::vector<double>& p, std::vector<double>& out) {
    double norm = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = -(p[i - 1] - 2.0 * p[i] + p[i + 1]) * inv_h2 + std::exp(p[i]) - rho[i];
      norm = std::max(norm, std::abs(out[i]));
    }
    return norm;
  };

  double norm = residual(phi, F);
  for (int iter = 0; iter < 50; ++iter) {
    if (norm <= tol) return phi;
    // Thomas algorithm on the interior: sub = sup = -1/h^2, diag = 2/h^2 + e^phi.
    const double off = -inv_h2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double diag = 2.0 * inv_h2 + std::exp(phi[i]);
      const double denom = i == 1 ? diag : diag - off * cprime[i - 1];
      cprime[i] = off / denom;
      dprime[i] = (-F[i] - (i == 1 ? 0.0 : off * dprime[i - 1])) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      delta[i] = dprime[i] - (i + 2 < n ? cprime[i] * delta[i + 1] : 0.0);
    }
    double step = 1.0;
    double trial_norm = 0.0;
    for (;;) {
      for (std::size_t i = 1; i + 1 < n; ++i) trial[i] = phi[i] + step * delta[i];
      trial_norm = residual(trial, F);
      if (trial_norm <= (1.0 - 1e-4 * step) * norm || step < 1e-10) break;
      step *= 0.5;
    }
    phi.swap(trial);
    norm = trial_norm;
  }
  if (norm <= tol) return phi;
  throw NumericalError("Newton stalled");
}

void validate_setup(const ColdIonSetup& setup) {
  const std::size_t n = setup.grid.n;
  if (n < 3 || !(setup.grid.hi > setup.grid.lo)) throw InvalidArgument("grid needs >= 3 nodes");
  if (setup.rho0.size() != n || setup.u0.size() != n) {
    throw InvalidArgument("rho0 and u0 must match the grid");
  }
  if (!(setup.nu >= 0.0)) throw InvalidArgument("damping nu must be >= 0");
  if (std::any_of(setup.rho0.begin(), setup.rho0.end(), [](double r) { return !(r > 0.0); })) {
    throw InvalidArgument("rho0 must be > 0");
  }
  for (std::size_t i : {std::size_t{0}, n - 1}) {
    if (std::abs(setup.rho0[i] - 1.0) >= 1e-6 || std::abs(setup.u0[i]) >= 1e-6) {
      throw InvalidArgument("far-field state must be (rho, u) = (1, 0) at the grid ends");
    }
  }
}

std::vector<double> gradient(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) throw InvalidArgument("gradient needs >= 3 samples");
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return d;
}

EnergyReport energy(const ColdIonSetup& setup) {
  validate_setup(setup);
  EnergyReport r;
  const double h = setup.grid.spacing();
  r.phi = solve_poisson_mb(setup.rho0, setup.grid);
  const auto dphi = gradient(r.phi, h);
  const std::size_t n = setup.grid.n;
  std::vector<double> kin(n), fld(n), pot(n);
  for (std::size_t i = 0; i < n; ++i) {
    kin[i] = 0.5 * setup.rho0[i] * setup.u0[i] * setup.u0[i];
    fld[i] = 0.5 * dphi[i] * dphi[i];
    pot[i] = U_eval(r.phi[i]);
  }
  r.kinetic = trapezoid(kin, h);
  r.field = trapezoid(fld, h);
  r.internal = trapezoid(pot, h);
  r.H = r.kinetic + r.field + r.internal;
  const auto bounds = potential_bounds(r.H);
  r.c_minus = bounds.c_minus;
  r.c_plus = bounds.c_plus;
  return r;
}

RegularityReport global_regularity_check(const ColdIonSetup& setup) {
  RegularityReport report;
  report.energy = energy(setup);
  const Params params{setup.nu, +1, report.energy.c_minus, report.energy.c_plus};
  report.closing = closing_condition(params);
  if (!report.closing.holds) {
    report.details = "closing condition fails for the derived potential bounds";
    return report;
  }
  const auto du0 = gradient(setup.u0, setup.grid.spacing());
  double s_top = 1.0;
  for (double r : setup.rho0) s_top = std::max(s_top, 1.0 / r);
  const RepulsiveThresholds thresholds(params, 2.0 * s_top + 1.0);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < setup.rho0.size(); ++i) {
    const PhasePoint p{du0[i] / setup.rho0[i], 1.0 / setup.rho0[i]};
    const double m = thresholds.sub_margin(p);
    report.min_margin = std::min(report.min_margin, m);
    if (!(m > 0.0)) report.failing_points.push_back(i);
  }
  report.checked_points = setup.rho0.size();
  report.global = report.failing_points.empty();
  report.verdict = report.global ? "global" : "not guaranteed";
  report.details = report.global ? "closing condition holds and every phase point is sub-critical"
                                 : "some phase points lie outside the sub-critical set";
  return report;
}

bool ion_band_admits(double rho0, double du0, double c_minus, double c_plus) {
  const double lower_sq = 2.0 * rho0 - c_minus;
  if (!(lower_sq > 0.0)) return false;
  const double upper_sq =
      2.0 * rho0 - c_plus + 4.0 / c_minus * (c_plus / c_minus - 1.0) * rho0 * rho0;
  if (!(upper_sq > 0.0)) return false;
  return -std::sqrt(lower_sq) < du0 && du0 < std::sqrt(upper_sq);
}

}  // namespace epct
