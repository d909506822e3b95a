#include <catch_amalgamated.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "epct/core.hpp"
#include "epct/quadrature.hpp"

using namespace epct;
using Catch::Matchers::WithinRel;

TEST_CASE("adaptive quadrature of smooth integrands", "[quadrature]") {
  CHECK_THAT(quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0), WithinRel(std::exp(1.0) - 1.0, 1e-13));
  CHECK(quad::integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THAT(quad::integrate([](double x) { return 1.0 / (1.0 + x * x); }, -inf, inf), WithinRel(std::numbers::pi, 1e-11));
}

TEST_CASE("square-root endpoint substitutions", "[quadrature]") {
  CHECK_THAT(quad::integrate_sqrt_left([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 4.0), WithinRel(4.0, 1e-12));
  CHECK_THAT(quad::integrate_sqrt_both([](double s) { return 1.0 / std::sqrt(s * (2.0 - s)); }, 0.0, 2.0),
             WithinRel(std::numbers::pi, 1e-12));
}

TEST_CASE("fixed panel rule", "[quadrature]") {
  CHECK_THAT(quad::integrate_panels([](double x) { return std::cos(x); }, 0.0, 100.0, 400), WithinRel(std::sin(100.0), 1e-12));
  CHECK_THROWS_AS(quad::integrate_panels([](double x) { return x; }, 0.0, 1.0, 0), InvalidArgument);
}
