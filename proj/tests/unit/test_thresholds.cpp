#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "epct/quadrature.hpp"
#include "epct/thresholds.hpp"
#include "oracles.hpp"

using namespace epct;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("solve_P at constant undamped background matches sqrt(s(2-s))", "[thresholds]") {
  const auto p = solve_P(1.0, 0.0, 10.0);
  CHECK(p.closed());
  CHECK(p(0.0) == 0.0);
  CHECK_THAT(p(1.0), WithinAbs(1.0, 1e-10));
  CHECK_THAT(p.s_hi(), WithinAbs(2.0, 1e-10));
  for (double s = 0.01; s <= 1.99; s += 0.01) CHECK_THAT(p(s), WithinAbs(oracle::sharp_threshold(1.0, s), 1e-8));
  CHECK_THROWS_AS(p(2.5), InvalidArgument);
}

TEST_CASE("solve_P upper endpoint follows the endpoint formula", "[thresholds]") {
  const auto p = solve_P(1.0, 0.5, 10.0);
  CHECK_THAT(gamma_exponent(1.0, 0.5), WithinAbs(0.5 * std::numbers::pi / std::sqrt(3.75), 1e-15));
  CHECK_THAT(gamma_exponent(1.0, 0.5), WithinAbs(0.81116, 1e-5));
  CHECK_THAT(p.s_hi(), WithinRel(oracle::s_tilde(1.0, 0.5), 1e-9));
  CHECK_THAT(p.s_hi(), WithinAbs(3.2505, 1e-4));
}

TEST_CASE("solve_P agrees with the explicit parametric curve", "[thresholds]") {
  for (double c : {1.0, 2.0, 4.0}) {
    for (double nu : {0.0, 0.3, 1.0, 2.5}) {
      if (std::abs(nu - 2.0 * std::sqrt(c)) < 1e-9) continue;
      const auto p = solve_P(c, nu, 8.0);
      for (int i = 1; i < 40; ++i) {
        const double s = p.s_lo() + (p.s_hi() - p.s_lo()) * i / 40.0;
        INFO("c=" << c << " nu=" << nu << " s=" << s);
        CHECK_THAT(p(s), WithinAbs(oracle::P_g(c, nu, s), 1e-7));
      }
    }
  }
}

TEST_CASE("near-anchor series of the P-curve", "[thresholds]") {
  const double c = 2.0;
  const double nu = 0.7;
  const auto p = solve_P(c, nu, 4.0);
  for (double s : {1e-9, 1e-7, 1e-5}) {
    const double series = std::sqrt(2.0 * s) * (1.0 + std::sqrt(2.0) / 3.0 * nu * std::sqrt(s) + (nu * nu / 18.0 - c / 4.0) * s);
    CHECK_THAT(p(s), WithinRel(series, 1e-6));
  }
}

TEST_CASE("solve_N examples", "[thresholds]") {
  const auto n = solve_N(1.0, 0.0, 2.0);
  CHECK(n(2.0) == 0.0);
  CHECK_THAT(n(1.0), WithinAbs(1.0, 1e-10));
  CHECK_THAT(n.s_lo(), WithinAbs(0.0, 1e-12));
  const auto n2 = solve_N(2.0, 0.0, 2.0);
  CHECK_THAT(n2(0.0), WithinAbs(2.0, 1e-9));
  CHECK_THROWS_AS(solve_N(1.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(solve_N(2.0, 0.0, 0.4), InvalidArgument);
}

TEST_CASE("solve_N agrees with the explicit parametric curve", "[thresholds]") {
  for (double c : {1.0, 2.0}) {
    for (double nu : {0.0, 0.4, 1.0}) {
      const double s_star = 1.0 / c + 0.5 * std::exp(-oracle::gamma(c, nu)) / c;
      const auto n = solve_N(c, nu, s_star);
      CHECK_THAT(n.s_lo(), WithinRel(oracle::s_star_star(c, nu, s_star), 1e-8));
      CHECK_THAT(n.s_lo(), WithinRel(0.5 / c, 1e-8));
      for (int i = 1; i < 20; ++i) {
        const double s = n.s_lo() + (n.s_hi() - n.s_lo()) * i / 20.0;
        CHECK_THAT(n(s), WithinAbs(oracle::N_g(c, nu, s_star, s), 1e-7));
      }
    }
  }
}

TEST_CASE("curve samples satisfy the curve ODE", "[thresholds][property]") {
  for (double nu : {0.0, 0.6}) {
    const auto p = solve_P(1.5, nu, 6.0);
    const auto n = solve_N(1.5, nu, p.s_hi());
    for (const auto* curve : {&p, &n}) {
      const double sign = curve->branch() == Branch::P ? 1.0 : -1.0;
      const auto samples = curve->samples();
      for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const auto [s, g] = samples[i];
        const double h = 1e-3;
        if (s - 2.0 * h <= curve->s_lo() + 0.05 || s + 2.0 * h >= curve->s_hi() - 0.05) continue;
        const auto& f = *curve;
        const double dg = (8.0 * (f(s + h) - f(s - h)) - (f(s + 2.0 * h) - f(s - 2.0 * h))) / (12.0 * h);
        CHECK(std::abs(g * dg - (sign * nu * g + 1.0 - 1.5 * s)) <= 1e-6);
        CHECK(g >= 0.0);
      }
    }
  }
}

TEST_CASE("domain_endpoints examples", "[thresholds]") {
  const auto r = domain_endpoints(1.0, 1.0, 0.0, 2.0);
  CHECK(r.s_tilde == 2.0);
  CHECK_THAT(r.s_star_star, WithinAbs(0.0, 1e-15));
  CHECK(r.gamma1 == 0.0);
  CHECK(r.gamma2 == 0.0);
  CHECK(domain_endpoints(1.0, 1.0, 2.0, 2.0).regime_P == Regime::unbounded);
  const auto r3 = domain_endpoints(2.0, 1.0, 2.0, 3.0);
  CHECK_THAT(r3.gamma1, WithinAbs(std::numbers::pi, 1e-14));
  CHECK_THAT(r3.s_tilde, WithinAbs((1.0 + std::exp(std::numbers::pi)) / 2.0, 1e-12));
  CHECK_THROWS_AS(domain_endpoints(1.0, 1.0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("closing_condition examples", "[thresholds]") {
  const auto a = closing_condition({0.0, 1, 1.0, 1.0});
  CHECK(a.holds);
  CHECK(a.sign_test_holds);
  CHECK(a.case_tag == "rep-#2.2");
  CHECK_THAT(a.s_star_star, WithinAbs(0.0, 1e-12));
  const auto b = closing_condition({0.0, 1, 1.0, 2.0});
  CHECK_FALSE(b.holds);
  CHECK_FALSE(b.sign_test_holds);
  CHECK_THAT(b.s_star_star, WithinAbs(1.0, 1e-12));
  const auto c = closing_condition({3.0, 1, 1.0, 1.0});
  CHECK(c.holds);
  CHECK(c.case_tag == "rep-#1");
  CHECK(closing_condition({2.5, 1, 1.0, 2.0}).case_tag == "rep-#2.1");
  CHECK_THROWS_AS(closing_condition({0.0, -1, 1.0, 1.0}), InvalidArgument);
}

TEST_CASE("lyapunov_eval examples", "[thresholds]") {
  const auto p = solve_P(1.0, 0.0, 4.0);
  CHECK_THAT(lyapunov_eval(p, {-1.0, 1.0}), WithinAbs(0.0, 1e-10));
  CHECK(lyapunov_eval(p, {0.0, 0.0}) == 0.0);
  const auto n = solve_N(1.0, 0.0, 2.0);
  CHECK_THAT(lyapunov_eval(n, {2.0, 1.0}), WithinAbs(1.0, 1e-10));
  CHECK_THROWS_AS(lyapunov_eval(p, {0.0, 3.0}), InvalidArgument);
}

TEST_CASE("classify_point examples", "[thresholds]") {
  const Params unit{0.0, 1, 1.0, 1.0};
  CHECK(classify_point({0.0, 1.0}, unit, 1e-9).label == Label::subcritical);
  const auto sup = classify_point({-2.0, 1.0}, unit, 1e-9);
  CHECK(sup.label == Label::supercritical);
  CHECK(sup.margin < 0.0);
  CHECK(classify_point({-1.0, 1.0}, unit, 1e-6).label == Label::indeterminate);
  CHECK_THROWS_AS(classify_point({0.0, 0.0}, unit, 1e-9), InvalidArgument);
  CHECK_THROWS_AS(classify_point({0.0, -1.0}, unit, 1e-9), InvalidArgument);
}

TEST_CASE("constant background classification reproduces the sharp region", "[thresholds][property]") {
  const Params unit{0.0, 1, 1.0, 1.0};
  const RepulsiveThresholds th(unit, 4.0);
  for (double s = 0.05; s < 3.0; s += 0.1) {
    for (double w = -2.95; w < 3.0; w += 0.1) {
      const Verdict v = th.classify({w, s}, 1e-9);
      const bool inside = s < 2.0 && std::abs(w) < oracle::sharp_threshold(1.0, s);
      INFO("w=" << w << " s=" << s);
      CHECK(v.label == (inside ? Label::subcritical : Label::supercritical));
    }
  }
}

TEST_CASE("breakdown_time_bound", "[thresholds]") {
  const Params unit{0.0, 1, 1.0, 1.0};
  const auto b = breakdown_time_bound({-2.0, 1.0}, unit);
  REQUIRE(b);
  CHECK_THAT(*b, WithinAbs(2.5 * std::numbers::pi, 1e-12));
  CHECK_FALSE(breakdown_time_bound({0.0, 1.0}, unit));

  const Params over{2.0, 1, 1.0, 1.0};
  const auto tiny = breakdown_time_bound({-0.1, 1e-8}, over);
  REQUIRE(tiny);
  CHECK(*tiny < 1e-3);
  const RepulsiveThresholds th(over, 4.0);
  const double g1 = th.p_minus()(1.0);
  const auto t0 = breakdown_time_bound({-g1, 1.0}, th, 1e-9);
  REQUIRE(t0);
  CHECK(*t0 <= 2.0);
  // Independent quadrature of ds / g over the parametric curve.
  const double ref = quad::integrate_sqrt_left([](double s) { return 1.0 / oracle::P_g(1.0, 2.0, s); }, 0.0, 1.0, 1e-9);
  CHECK_THAT(*t0, WithinRel(ref, 1e-6));
}

TEST_CASE("region_sweep examples", "[thresholds]") {
  const Params unit{0.0, 1, 1.0, 1.0};
  const SweepGrid around{-0.2, 0.2, 2, 0.8, 1.2, 2};
  for (const auto& cell : region_sweep(around, unit, 1e-9)) CHECK(cell.verdict.label == Label::subcritical);

  const SweepGrid far_left{-12.0, -10.0, 3, 0.1, 0.5, 3};
  for (const auto& cell : region_sweep(far_left, unit, 1e-9)) CHECK(cell.verdict.label == Label::supercritical);

  const Params gap{0.0, 1, 1.0, 2.0};
  CHECK(classify_point({0.0, 0.5}, gap, 1e-9).label == Label::indeterminate);

  const SweepGrid grid{-1.0, 1.0, 4, 0.0, 2.0, 3};
  const auto cells = region_sweep(grid, unit, 1e-9, 3);
  REQUIRE(cells.size() == 12);
  CHECK_THAT(cells[0].point.w, WithinAbs(-0.75, 1e-15));
  CHECK_THAT(cells[0].point.s, WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THAT(cells[1].point.w, WithinAbs(-0.25, 1e-15));
  CHECK_THAT(cells[4].point.s, WithinAbs(1.0, 1e-15));
  const auto serial = region_sweep(grid, unit, 1e-9, 1);
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(cells[i].verdict.margin == serial[i].verdict.margin);
}

TEST_CASE("enlarging the background range is monotone", "[thresholds][property]") {
  const SweepGrid grid{-3.0, 3.0, 40, 0.0, 3.0, 40};
  const Params narrow{1.0, 1, 1.0, 1.1};
  const Params wide{1.0, 1, 0.9, 1.2};
  const auto a = region_sweep(grid, narrow, 1e-9);
  const auto b = region_sweep(grid, wide, 1e-9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].verdict.label == Label::subcritical) CHECK(a[i].verdict.label == Label::subcritical);
    if (b[i].verdict.label == Label::supercritical) CHECK(a[i].verdict.label == Label::supercritical);
  }
}

TEST_CASE("elliptic integral identity", "[thresholds]") {
  for (double c : {1.0, 2.0, 4.0}) {
    for (double nu : {0.0, 0.5, 1.0}) {
      const auto p = solve_P(c, nu, 100.0);
      const double integral = quad::integrate_sqrt_both([&](double s) { return 1.0 / p(s); }, 0.0, p.s_hi(), 1e-10);
      CHECK_THAT(integral, WithinRel(std::numbers::pi / oracle::mu(c, nu), 1e-8));
      CHECK_THAT(p.total_arc_time(), WithinRel(std::numbers::pi / oracle::mu(c, nu), 1e-9));
    }
  }
}
