#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "epct/ode.hpp"
#include "oracles.hpp"

using namespace epct;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ode::VectorField decay = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; };

const ode::VectorField repulsive_unit = [](double, std::span<const double> y, std::span<double> dy) {
  dy[0] = 1.0 - y[1];
  dy[1] = y[0];
};

ode::Options tight(double rel) {
  ode::Options o;
  o.rel_tol = rel;
  o.abs_tol = rel * 1e-3;
  return o;
}

}  // namespace

TEST_CASE("exponential decay to the closed form", "[ode]") {
  const auto traj = ode::integrate(decay, {1.0}, 0.0, 1.0);
  CHECK_THAT(traj.final_state()[0], WithinAbs(std::exp(-1.0), 1e-8));
  CHECK(traj.t_end() == 1.0);
}

TEST_CASE("constant field stays put", "[ode]") {
  const ode::VectorField zero = [](double, std::span<const double>, std::span<double> dy) { dy[0] = 0.0; };
  const auto traj = ode::integrate(zero, {5.0}, 0.0, 10.0);
  CHECK_THAT(traj.final_state()[0], WithinAbs(5.0, 1e-12));
}

TEST_CASE("reduced system event at s = 0 lands on pi", "[ode]") {
  const ode::EventSpec ev{"s0", [](double, std::span<const double> y) { return y[1]; },
                          ode::Direction::decreasing, true,
                          [](double, std::span<const double> y) { return y[0]; }, 1e-9};
  const auto traj = ode::integrate(repulsive_unit, {0.0, 2.0}, 0.0, 10.0, tight(1e-11), {ev});
  REQUIRE(traj.event());
  CHECK_THAT(traj.event()->t, WithinAbs(std::numbers::pi, 1e-6));
  CHECK(std::abs(traj.event()->state[1]) <= 1e-9);
  CHECK(traj.t_end() == traj.event()->t);
}

TEST_CASE("transversal events are refined to the test's zero", "[ode]") {
  SECTION("decay crossing 1/2") {
    const ode::EventSpec ev{"half", [](double, std::span<const double> y) { return y[0] - 0.5; }};
    const auto traj = ode::integrate(decay, {1.0}, 0.0, 5.0, tight(1e-10), {ev});
    REQUIRE(traj.event());
    CHECK_THAT(traj.event()->t, WithinAbs(std::log(2.0), 1e-10));
    CHECK(std::abs(traj.event()->state[0] - 0.5) <= 1e-10);
  }
  SECTION("oscillator crossing s = 0 transversally") {
    const ode::EventSpec ev{"s0", [](double, std::span<const double> y) { return y[1]; }, ode::Direction::decreasing};
    const auto traj = ode::integrate(repulsive_unit, {-1.5, 1.0}, 0.0, 10.0, tight(1e-11), {ev});
    REQUIRE(traj.event());
    const double t_star = oracle::ws_undamped_blowup(1.0, -1.5, 1.0);
    CHECK_THAT(traj.event()->t, WithinAbs(t_star, 1e-8));
    CHECK(std::abs(traj.event()->state[1]) <= 1e-10);
  }
}

TEST_CASE("direction filters and non-terminal events", "[ode]") {
  const ode::VectorField rot = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = -y[1];
    dy[1] = y[0];
  };
  const ode::EventSpec up{"up", [](double, std::span<const double> y) { return y[1]; }, ode::Direction::increasing, false};
  const auto traj = ode::integrate(rot, {1.0, 0.0}, 0.0, 13.0, tight(1e-10), {up});
  CHECK_FALSE(traj.event());
  // y[1] = sin t rises through 0 at 2 pi and 4 pi; the start value 0 is not a crossing.
  REQUIRE(traj.crossings().size() == 2);
  CHECK_THAT(traj.crossings()[0].t, WithinAbs(2.0 * std::numbers::pi, 1e-9));
  CHECK_THAT(traj.crossings()[1].t, WithinAbs(4.0 * std::numbers::pi, 1e-9));
}

TEST_CASE("dense output", "[ode]") {
  const auto traj = ode::integrate(decay, {1.0}, 0.0, 1.0, tight(1e-10));
  CHECK(ode::eval_dense(traj, 0.0)[0] == 1.0);
  CHECK_THAT(ode::eval_dense(traj, 0.5)[0], WithinAbs(std::exp(-0.5), 1e-7));
  for (std::size_t i = 0; i < traj.times().size(); ++i) {
    CHECK_THAT(traj.eval_component(traj.times()[i], 0), WithinAbs(traj.states()[i][0], 1e-12));
  }
  CHECK_THROWS_AS(ode::eval_dense(traj, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ode::eval_dense(traj, -0.1), std::invalid_argument);
}

TEST_CASE("integrator failures are reported", "[ode]") {
  const ode::VectorField blowup = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  CHECK_THROWS_AS(ode::integrate(blowup, {1.0}, 0.0, 2.0), std::runtime_error);
  ode::Options few;
  few.max_steps = 3;
  CHECK_THROWS_WITH(ode::integrate(decay, {1.0}, 0.0, 100.0, few), ContainsSubstring("max steps exceeded"));
  const ode::VectorField nan_field = [](double, std::span<const double>, std::span<double> dy) { dy[0] = NAN; };
  CHECK_THROWS_AS(ode::integrate(nan_field, {1.0}, 0.0, 1.0), std::runtime_error);
}

TEST_CASE("halving rel_tol never increases the terminal error", "[ode][property]") {
  const ode::VectorField osc = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = -y[1];
    dy[1] = y[0];
  };
  auto err_decay = [&](double rel) {
    const auto tr = ode::integrate(decay, {1.0}, 0.0, 3.0, tight(rel));
    return std::abs(tr.final_state()[0] - std::exp(-3.0));
  };
  auto err_osc = [&](double rel) {
    const auto tr = ode::integrate(osc, {1.0, 0.0}, 0.0, 10.0, tight(rel));
    return std::hypot(tr.final_state()[0] - std::cos(10.0), tr.final_state()[1] - std::sin(10.0));
  };
  for (auto err : {std::function<double(double)>(err_decay), std::function<double(double)>(err_osc)}) {
    double rel = 1e-4;
    double prev = err(rel);
    while (rel > 1e-10) {
      rel *= 0.5;
      const double next = err(rel);
      INFO("rel_tol " << rel << " error " << next << " previous " << prev);
      CHECK(next <= prev);
      prev = next;
    }
  }
}
