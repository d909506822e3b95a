// Adaptive quadrature helpers (Gauss-Kronrod backed) with endpoint substitutions.
#pragma once

#include <cstddef>
#include <functional>

namespace epct::quad {

using Integrand = std::function<double(double)>;

/// Adaptive 61-point Gauss-Kronrod on [a, b]; either bound may be infinite.
/// Throws NumericalError when the estimated relative error exceeds max(100 rel_tol, 1e-8).
double integrate(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// For f ~ C (s - a)^(-1/2) near a: substitutes s = a + (b - a) u^2.
double integrate_sqrt_left(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// For f with inverse-square-root singularities at both ends:
/// substitutes s = a + (b - a)(1 - cos theta) / 2.
double integrate_sqrt_both(const Integrand& f, double a, double b, double rel_tol = 1e-12);

/// Fixed 10-point Gauss rule on `panels` equal panels. Suited to long
/// oscillatory ranges where adaptivity is wasted.
double integrate_panels(const Integrand& f, double a, double b, std::size_t panels);

}  // namespace epct::quad
