#include "epct/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epct/parallel.hpp"
#include "epct/quadrature.hpp"

namespace epct {

namespace {

double gauss(double x) { return std::exp(-x * x); }

double spread_of_tail(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto first = v.size() > 3 ? v.end() - 3 : v.begin();
  const auto [lo, hi] = std::minmax_element(first, v.end());
  return *hi - *lo;
}

std::size_t panels_for(double R) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * R / 0.25)));
}

}  // namespace

InitialDatum::InitialDatum(DatumSpec spec) : spec_(std::move(spec)) {
  const double c = spec_.c_bar;
  const double a = spec_.a;
  const double b = spec_.b;
  if (!(c > 0.0)) throw InvalidArgument("datum c_bar must be > 0");
  const std::string& kind = spec_.kind;
  if (kind == "uniform") {
    rho0_ = [c](double) { return c; };
    u0_ = [](double) { return 0.0; };
    du0_ = [](double) { return 0.0; };
  } else if (kind == "gaussian") {
    rho0_ = [c, a](double x) { return c + a * x * gauss(x); };
    u0_ = [b](double x) { return b * gauss(x); };
    du0_ = [b](double x) { return -2.0 * b * x * gauss(x); };
  } else if (kind == "density_bump") {
    rho0_ = [c, a](double x) { return c + a * gauss(x); };
    u0_ = [b](double x) { return b * gauss(x); };
    du0_ = [b](double x) { return -2.0 * b * x * gauss(x); };
  } else if (kind == "anomalous") {
    rho0_ = [c](double) { return c; };
    u0_ = [](double x) { return std::sin(x) * std::pow(1.0 + x * x, -0.375); };
    du0_ = [](double x) {
      const double q = 1.0 + x * x;
      return std::cos(x) * std::pow(q, -0.375) - 0.75 * x * std::sin(x) * std::pow(q, -1.375);
    };
  } else if (kind == "nonexistence") {
    rho0_ = [c](double x) { return c + 1.0 / (1.0 + x * x); };
    u0_ = [](double) { return 0.0; };
    du0_ = [](double) { return 0.0; };
  } else if (kind == "table") {
    const auto& xs = spec_.x;
    if (xs.size() < 2 || spec_.rho.size() != xs.size() || spec_.u.size() != xs.size()) {
      throw InvalidArgument("table datum needs >= 2 matching (x, rho, u) samples");
    }
    if (std::adjacent_find(xs.begin(), xs.end(), std::greater_equal<>()) != xs.end()) {
      throw InvalidArgument("table datum x must be strictly increasing");
    }
    // Piecewise linear, constant beyond the sampled range.
    auto locate = [xs](double x) {
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      std::size_t i = static_cast<std::size_t>(it - xs.begin());
      i = std::clamp<std::size_t>(i, 1, xs.size() - 1);
      return i - 1;
    };
    auto interp = [xs, locate](const std::vector<double>& v) {
      return [xs, v, locate](double x) {
        if (x <= xs.front()) return v.front();
        if (x >= xs.back()) return v.back();
        const std::size_t i = locate(x);
        const double th = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return (1.0 - th) * v[i] + th * v[i + 1];
      };
    };
    rho0_ = interp(spec_.rho);
    u0_ = interp(spec_.u);
    du0_ = [xs, u = spec_.u, locate](double x) {
      if (x < xs.front() || x > xs.back()) return 0.0;
      const std::size_t i = locate(x);
      return (u[i + 1] - u[i]) / (xs[i + 1] - xs[i]);
    };
  } else {
    throw InvalidArgument("unknown datum kind: " + kind);
  }
}

double gamma_exact(const InitialDatum& datum, double c_bar, int k, double t, double alpha) {
  if (!(c_bar > 0.0)) throw InvalidArgument("c_bar must be > 0");
  if (k != 1 && k != -1) throw InvalidArgument("force sign k must be -1 or +1");
  const double r = std::sqrt(c_bar);
  const double q = datum.rho0(alpha) / c_bar - 1.0;
  const double du = datum.du0(alpha);
  if (k == 1) return 1.0 + q * (1.0 - std::cos(r * t)) + du * std::sin(r * t) / r;
  return 1.0 + q * (1.0 - std::cosh(r * t)) + du * std::sinh(r * t) / r;
}

CharacteristicsResult solve_characteristics(const InitialDatum& datum, double c_bar, int k,
                                            double nu, const UniformGrid& labels, double horizon,
                                            const CharacteristicsOptions& opts) {
  validate_params({nu, k, c_bar, c_bar});
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be > 0");
  if (labels.n < 2 || !(labels.hi > labels.lo)) throw InvalidArgument("label grid needs n >= 2");

  const double span = std::max(std::abs(labels.lo), std::abs(labels.hi));
  for (double edge : {labels.lo, labels.hi}) {
    if (std::abs(datum.rho0(edge) - c_bar) > opts.decay_tol || std::abs(datum.u0(edge)) > opts.decay_tol) {
      throw InvalidArgument("datum not decaying at the truncation boundary");
    }
  }

  const std::size_t n = labels.n;
  const double h = labels.spacing();
  const std::vector<double> alpha = labels.nodes();
  std::vector<double> rho0(n), E0(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    rho0[i] = datum.rho0(alpha[i]);
    if (!(rho0[i] > 0.0)) throw InvalidArgument("initial density must be > 0");
  }
  for (std::size_t i = 1; i < n; ++i) {
    E0[i] = E0[i - 1] + 0.5 * h * ((rho0[i - 1] - c_bar) + (rho0[i] - c_bar));
  }
  if (std::abs(E0.back()) > opts.neutrality_tol * span) {
    throw InvalidArgument("non-neutral initial field");
  }

  ode::VectorField f = [c_bar, k, nu](double, std::span<const double> y, std::span<double> dy) {
    // (x, u, E, Gamma, w, s)
    dy[0] = y[1];
    dy[1] = -nu * y[1] + k * y[2];
    dy[2] = -c_bar * y[1];
    dy[3] = y[3] * y[4] / y[5];
    dy[4] = -nu * y[4] + k * (1.0 - c_bar * y[5]);
    dy[5] = y[4];
  };
  const std::vector<ode::EventSpec> events{
      {"blowup", [](double, std::span<const double> y) { return y[3]; }, ode::Direction::decreasing,
       true}};

  std::vector<ode::Trajectory> paths(n);
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    const double a = alpha[i];
    ode::State y0{a, datum.u0(a), E0[i], 1.0, datum.du0(a) / rho0[i], 1.0 / rho0[i]};
    paths[i] = ode::integrate(f, std::move(y0), 0.0, horizon, opts.ode, events);
  });

  CharacteristicsResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto& ev = paths[i].event()) {
      if (!result.blowup || ev->t < result.blowup->t) result.blowup = LabelBlowUp{ev->t, alpha[i], i};
    }
  }
  const double cutoff = result.blowup ? result.blowup->t : std::numeric_limits<double>::infinity();

  std::vector<double> times = opts.snapshot_times;
  if (times.empty()) {
    for (int j = 0; j <= 10; ++j) times.push_back(horizon * j / 10.0);
  }
  std::sort(times.begin(), times.end());

  ode::State y(6);
  for (double t : times) {
    if (t < 0.0 || t > horizon || !(t < cutoff)) continue;
    FluidState state;
    state.t = t;
    state.alpha = alpha;
    state.x.resize(n);
    state.rho.resize(n);
    state.u.resize(n);
    state.Gamma.resize(n);
    state.E.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      paths[i].eval_into(t, y);
      state.x[i] = y[0];
      state.u[i] = y[1];
      state.E[i] = y[2];
      state.Gamma[i] = y[3];
      state.rho[i] = rho0[i] / y[3];
      result.gamma_consistency = std::max(result.gamma_consistency, std::abs(y[3] - rho0[i] * y[5]));
    }
    result.states.push_back(std::move(state));
  }
  return result;
}

NeutralityReport neutrality_report(const std::vector<FluidState>& states, double c_bar, double tol) {
  NeutralityReport report;
  if (states.empty()) return report;
  for (const auto& st : states) {
    const std::size_t n = st.alpha.size();
    if (n < 2) throw InvalidArgument("fluid state needs >= 2 labels");
    const double h = st.alpha[1] - st.alpha[0];
    std::vector<double> dev(n), absdev(n);
    double tv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dev[i] = st.rho[i] * st.Gamma[i] - c_bar * st.Gamma[i];
      absdev[i] = std::abs(dev[i]);
      if (i > 0) tv += std::abs(st.u[i] - st.u[i - 1]);
    }
    report.t.push_back(st.t);
    report.integral.push_back(trapezoid(dev, h));
    report.l1_fluctuation.push_back(trapezoid(absdev, h));
    report.total_variation.push_back(tv);
  }
  const auto& u0 = states.front().u;
  report.du0_integral = u0.back() - u0.front();
  report.du0_neutral = std::abs(report.du0_integral) <= tol;
  return report;
}

AnomalousReport anomalous_demo(const std::vector<double>& R_list, double t, double c_bar) {
  if (!(c_bar > 0.0)) throw InvalidArgument("c_bar must be > 0");
  if (!(t >= 0.0)) throw InvalidArgument("time must be >= 0");
  AnomalousReport report;
  report.t = t;
  report.c_bar = c_bar;
  report.R = R_list;
  const InitialDatum anomalous = InitialDatum::anomalous(c_bar);
  const InitialDatum control(DatumSpec::closed_form("density_bump", c_bar, 0.0, 1.0));
  auto excess = [&](const InitialDatum& d) {
    return [&d, c_bar, t](double a) { return gamma_exact(d, c_bar, +1, t, a) - 1.0; };
  };
  for (double R : R_list) {
    if (!(R > 0.0)) throw InvalidArgument("truncation radii must be > 0");
    const std::size_t panels = panels_for(R);
    auto e1 = excess(anomalous);
    auto e2 = excess(control);
    report.J.push_back(quad::integrate_panels(e1, -R, R, panels));
    report.L1.push_back(quad::integrate_panels([&](double a) { return std::abs(e1(a)); }, -R, R, panels));
    report.control_J.push_back(quad::integrate_panels(e2, -R, R, panels));
    report.control_L1.push_back(
        quad::integrate_panels([&](double a) { return std::abs(e2(a)); }, -R, R, panels));
  }
  report.spread_J = spread_of_tail(report.J);
  report.spread_L1 = spread_of_tail(report.L1);
  report.control_spread_J = spread_of_tail(report.control_J);
  report.control_spread_L1 = spread_of_tail(report.control_L1);
  report.non_convergent = report.spread_L1 > 10.0 * report.control_spread_L1;
  return report;
}

NonexistenceReport nonexistence_demo(double c_bar, double t, const std::vector<double>& R_list) {
  if (!(c_bar > 0.0)) throw InvalidArgument("c_bar must be > 0");
  NonexistenceReport report;
  report.t = t;
  report.c_bar = c_bar;
  report.R = R_list;
  const double r = std::sqrt(c_bar);
  const double factor = std::sin(r * t) / r;
  auto g = [](double x) { return 1.0 / (1.0 + x * x); };
  for (double R : R_list) {
    if (!(R > 0.0)) throw InvalidArgument("truncation radii must be > 0");
    report.delta.push_back(quad::integrate(g, -R, R) * factor);
  }
  const double inf = std::numeric_limits<double>::infinity();
  report.limit = quad::integrate(g, -inf, inf) * factor;
  report.limit_nonzero = std::abs(report.limit) > 1e-12;
  return report;
}

}  // namespace epct
