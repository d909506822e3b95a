#include "epct/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "epct/core.hpp"

namespace epct::quad {

namespace bq = boost::math::quadrature;

double integrate(const Integrand& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = bq::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw NumericalError("quadrature produced a non-finite value");
  if (error > std::max(100.0 * rel_tol, 1e-8) * l1 && error > 1e-300) {
    throw NumericalError("quadrature did not converge");
  }
  return value;
}

double integrate_sqrt_left(const Integrand& f, double a, double b, double rel_tol) {
  const double width = b - a;
  if (width == 0.0) return 0.0;
  return integrate([&](double u) { return 2.0 * width * u * f(a + width * u * u); }, 0.0, 1.0,
                   rel_tol);
}

double integrate_sqrt_both(const Integrand& f, double a, double b, double rel_tol) {
  const double half = 0.5 * (b - a);
  if (half == 0.0) return 0.0;
  return integrate(
      [&](double theta) { return half * std::sin(theta) * f(a + half * (1.0 - std::cos(theta))); },
      0.0, std::numbers::pi, rel_tol);
}

double integrate_panels(const Integrand& f, double a, double b, std::size_t panels) {
  if (panels == 0) throw InvalidArgument("integrate_panels: need at least one panel");
  const double width = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * width;
    sum += bq::gauss<double, 10>::integrate(f, lo, lo + width);
  }
  return sum;
}

}  // namespace epct::quad
