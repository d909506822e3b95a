#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "epct/phaseplane.hpp"
#include "oracles.hpp"

using namespace epct;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {
const Params kUnit{0.0, 1, 1.0, 1.0};
const Background kOne = Background::constant(1.0);
}  // namespace

TEST_CASE("equilibrium stays put", "[phaseplane]") {
  const auto out = simulate_ws({0.0, 1.0}, kUnit, kOne, 100.0);
  CHECK_FALSE(out.blowup);
  for (int i = 0; i <= 1000; ++i) {
    const auto y = out.trajectory.eval(0.1 * i);
    CHECK(std::abs(y[0]) <= 1e-9);
    CHECK(std::abs(y[1] - 1.0) <= 1e-9);
  }
}

TEST_CASE("tangential blow-up from (0, 2) at t = pi", "[phaseplane]") {
  const auto out = simulate_ws({0.0, 2.0}, kUnit, kOne, 10.0);
  REQUIRE(out.blowup);
  CHECK_THAT(out.blowup->t, WithinAbs(std::numbers::pi, 1e-6));
  CHECK(out.trajectory.t_end() <= 10.0);
}

TEST_CASE("transversal blow-up matches the undamped closed form", "[phaseplane]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w_dist(-3.0, -0.5);
  std::uniform_real_distribution<double> s_dist(0.2, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double w0 = w_dist(rng);
    const double s0 = s_dist(rng);
    const double t_ref = oracle::ws_undamped_blowup(1.0, w0, s0);
    const auto out = simulate_ws({w0, s0}, kUnit, kOne, 20.0);
    if (std::isinf(t_ref)) {
      CHECK_FALSE(out.blowup);
      continue;
    }
    REQUIRE(out.blowup);
    CHECK_THAT(out.blowup->t, WithinAbs(t_ref, 1e-8));
    for (int j = 0; j < 1000; ++j) CHECK(out.trajectory.eval_component(out.blowup->t * j / 1000.0, 1) > 0.0);
  }
}

TEST_CASE("attractive start on the stable line converges to equilibrium", "[phaseplane]") {
  const auto out = simulate_ws({-0.5, 1.5}, {0.0, -1, 1.0, 1.0}, kOne, 10.0);
  CHECK_FALSE(out.blowup);
  const auto y = out.trajectory.final_state();
  CHECK_THAT(y[1] - 1.0, WithinAbs(0.5 * std::exp(-10.0), 1e-7));
  CHECK_THAT(y[0], WithinAbs(-0.5 * std::exp(-10.0), 1e-7));
}

TEST_CASE("simulate_ws preconditions", "[phaseplane]") {
  CHECK_THROWS_AS(simulate_ws({0.0, 0.0}, kUnit, kOne, 1.0), InvalidArgument);
  CHECK_THROWS_AS(simulate_ws({0.0, 1.0}, kUnit, Background::constant(2.0), 1.0), InvalidArgument);
  CHECK_THROWS_AS(simulate_ws({0.0, 1.0}, kUnit, kOne, -1.0), InvalidArgument);
}

TEST_CASE("resonance demo", "[phaseplane]") {
  CHECK_FALSE(resonance_demo(0.0, 200.0).blowup);
  const auto hit = resonance_demo(0.05, 200.0);
  REQUIRE(hit.blowup);
  CHECK(hit.blowup->t < 200.0);
  CHECK_THAT(hit.blowup->t, WithinAbs(40.62736277, 1e-4));
  const auto shifted = resonance_demo(0.05, 400.0, std::numbers::pi);
  REQUIRE(shifted.blowup);
  CHECK_THAT(shifted.blowup->t, WithinAbs(43.53370266, 1e-4));
  CHECK_THROWS_AS(resonance_demo(1.0, 10.0), InvalidArgument);
}

TEST_CASE("bound check on super-critical starts", "[phaseplane]") {
  const RepulsiveThresholds th(kUnit, 4.0);
  auto out = simulate_ws({-2.0, 1.0}, kUnit, kOne, 20.0);
  attach_bound_check(out, th);
  REQUIRE(out.bound_check);
  CHECK(out.bound_check->satisfied);
  CHECK_THAT(out.bound_check->bound, WithinAbs(2.5 * std::numbers::pi, 1e-12));
  auto sub = simulate_ws({0.0, 1.0}, kUnit, kOne, 5.0);
  attach_bound_check(sub, th);
  CHECK_FALSE(sub.bound_check);
}

TEST_CASE("weak comparison: equality propagates at constant background", "[phaseplane]") {
  const RepulsiveThresholds th(kUnit, 4.0);
  const double s0 = 1.5;
  const double w0 = -th.p_minus()(s0);
  // The orbit reaches (0, 0) at t = 2 pi / 3, where the square-root endpoint
  // amplifies the touch residual; stop short of it.
  const auto out = simulate_ws({w0, s0}, kUnit, kOne, 2.0);
  const auto report = check_comparison(out, th, CompareMode::weak);
  REQUIRE_FALSE(report.checks.empty());
  const auto& lp = report.checks.front();
  CHECK(lp.function == "L_P-");
  CHECK(lp.precondition_met);
  CHECK(lp.max_violation <= 1e-7);
}

TEST_CASE("weak comparison under a resonant sinusoid", "[phaseplane]") {
  const Params p{0.0, 1, 0.95, 1.05};
  const RepulsiveThresholds th(p, 4.0);
  const double s0 = 1.0;
  const double w0 = -th.p_minus()(s0) - 0.1;
  const auto out = simulate_ws({w0, s0}, p, Background::sinusoid(1.0, 0.05, 1.0, 0.0), 30.0);
  const auto report = check_comparison(out, th, CompareMode::weak);
  const auto& lp = report.checks.front();
  CHECK(lp.precondition_met);
  CHECK_THAT(lp.start_value, WithinAbs(-0.1, 1e-9));
  CHECK(lp.preserved(1e-7));

  const auto bad = simulate_ws({-th.p_minus()(s0) + 0.1, s0}, p, Background::sinusoid(1.0, 0.05, 1.0, 0.0), 30.0);
  const auto bad_report = check_comparison(bad, th, CompareMode::weak);
  CHECK_FALSE(bad_report.checks.front().precondition_met);
}

TEST_CASE("strong comparison keeps sub-critical starts inside", "[phaseplane]") {
  const Params p{1.0, 1, 1.0, 1.2};
  REQUIRE(closing_condition(p).holds);
  const RepulsiveThresholds th(p, 6.0);
  const auto out = simulate_ws({0.1, 0.8}, p, Background::sinusoid(1.1, 0.1, 2.0, 0.3), 50.0);
  CHECK_FALSE(out.blowup);
  const auto report = check_comparison(out, th, CompareMode::strong);
  CHECK(report.all_preserved());
}

TEST_CASE("theta_minus", "[phaseplane]") {
  CHECK(theta_minus({1.0, 1.0 / 3.0}, 3.0) == 0.0);
  CHECK_THAT(theta_minus({1.0, 2.0}, 1.0), WithinAbs(std::numbers::pi / 4, 1e-15));
  CHECK_THROWS_WITH(theta_minus({0.0, 2.0}, 1.0), ContainsSubstring("angle undefined"));
}

TEST_CASE("theta_minus grows at least at rate sqrt(c-)", "[phaseplane][property]") {
  const Params p{0.0, 1, 1.0, 1.3};
  const auto bg = Background::sinusoid(1.15, 0.15, 1.7, 0.2);
  const auto out = simulate_ws({0.8, 1.2}, p, bg, 3.0);
  const double dt = 1e-4;
  for (double t = 0.0; t + dt <= out.trajectory.t_end(); t += 0.01) {
    const auto a = out.trajectory.eval(t);
    const auto b = out.trajectory.eval(t + dt);
    if (a[1] < 1.0 || a[0] <= 0.0 || b[0] <= 0.0) continue;
    const double rate = (theta_minus({b[0], b[1]}, 1.0) - theta_minus({a[0], a[1]}, 1.0)) / dt;
    CHECK(rate >= 1.0 - 1e-6);
  }
}

TEST_CASE("random admissible sinusoids are reproducible and admissible", "[phaseplane]") {
  const Params p{0.5, 1, 1.0, 1.2};
  const auto a = random_admissible_sinusoid(p, 42, 3);
  const auto b = random_admissible_sinusoid(p, 42, 3);
  CHECK(a == b);
  CHECK_FALSE(a == random_admissible_sinusoid(p, 42, 4));
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(random_admissible_sinusoid(p, 1, i).fits(p));
}
