#include "epct/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "epct/core.hpp"

namespace epct::ode {

namespace {

// Dormand-Prince 5(4) tableau with the Hairer-Wanner continuous extension.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kEventTimeTol = 1e-12;
constexpr double kUnderflowFraction = 1e-14;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool crossed(Direction dir, double before, double after) {
  switch (dir) {
    case Direction::decreasing: return before > 0.0 && after <= 0.0;
    case Direction::increasing: return before < 0.0 && after >= 0.0;
    case Direction::any: return (before > 0.0 && after <= 0.0) || (before < 0.0 && after >= 0.0);
  }
  return false;
}

}  // namespace

class Integrator {
 public:
  Integrator(const VectorField& f, const Options& opts, const std::vector<EventSpec>& events)
      : f_(f), opts_(opts), events_(events) {}

  Trajectory run(State y0, double t0, double t1);

 private:
  double error_norm(const State& y, const State& ynew, const State& err) const;
  double initial_step(double t0, const State& y0, const State& f0, double span) const;
  double locate(const Trajectory& traj, const ScalarFn& fn, double lo, double g_lo, double hi) const;

  const VectorField& f_;
  const Options& opts_;
  const std::vector<EventSpec>& events_;
};

double Integrator::error_norm(const State& y, const State& ynew, const State& err) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double sk = opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
    const double r = err[i] / sk;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(y.size()));
}

double Integrator::initial_step(double t0, const State& y0, const State& f0, double span) const {
  const std::size_t n = y0.size();
  double d0 = 0.0, df = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sk = opts_.abs_tol + opts_.rel_tol * std::abs(y0[i]);
    d0 += (y0[i] / sk) * (y0[i] / sk);
    df += (f0[i] / sk) * (f0[i] / sk);
  }
  d0 = std::sqrt(d0 / n);
  df = std::sqrt(df / n);
  double h0 = (d0 < 1e-5 || df < 1e-5) ? 1e-6 : 0.01 * d0 / df;
  h0 = std::min(h0, span);

  State y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  f_(t0 + h0, y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sk = opts_.abs_tol + opts_.rel_tol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dmax = std::max(df, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, span, opts_.max_step});
}

double Integrator::locate(const Trajectory& traj, const ScalarFn& fn, double lo, double g_lo,
                          double hi) const {
  State y(traj.dim());
  auto g_at = [&](double t) {
    traj.eval_into(t, y);
    return fn(t, y);
  };
  double g_hi = g_at(hi);
  for (int it = 0; it < 200 && hi - lo > kEventTimeTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g_at(mid);
    if ((g_lo > 0.0 && g_mid > 0.0) || (g_lo < 0.0 && g_mid < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
  }
  // Final secant polish inside the bracket.
  if (g_hi != g_lo) {
    const double ts = lo - g_lo * (hi - lo) / (g_hi - g_lo);
    if (ts > lo && ts < hi) {
      const double gs = g_at(ts);
      if (std::abs(gs) <= std::abs(g_hi)) return ts;
    }
  }
  return hi;
}

Trajectory Integrator::run(State y0, double t0, double t1) {
  if (!(t1 > t0)) throw InvalidArgument("integrate: need t1 > t0");
  if (!(opts_.rel_tol > 0.0) || !(opts_.abs_tol > 0.0) || opts_.max_steps == 0) {
    throw InvalidArgument("integrate: tolerances and max_steps must be positive");
  }
  if (y0.empty()) throw InvalidArgument("integrate: empty state");

  const std::size_t n = y0.size();
  const double span = t1 - t0;
  const double h_min = kUnderflowFraction * span;

  Trajectory traj;
  traj.dim_ = n;
  traj.times_.push_back(t0);
  traj.states_.push_back(y0);

  std::array<State, 7> k;
  for (auto& ki : k) ki.assign(n, 0.0);
  State ytmp(n), ynew(n), err(n);

  f_(t0, y0, k[0]);
  if (!all_finite(y0) || !all_finite(k[0])) throw NumericalError("non-finite state");

  std::vector<double> g_prev(events_.size());
  std::vector<double> r_prev(events_.size(), 0.0);
  auto watches_touch = [](const EventSpec& ev) { return ev.touch_tol > 0.0 && ev.rate; };
  for (std::size_t e = 0; e < events_.size(); ++e) {
    g_prev[e] = events_[e].test(t0, y0);
    if (watches_touch(events_[e])) r_prev[e] = events_[e].rate(t0, y0);
  }

  double h = opts_.first_step > 0.0 ? std::min(opts_.first_step, span)
                                    : initial_step(t0, y0, k[0], span);
  double t = t0;
  State y = std::move(y0);
  bool last_rejected = false;
  std::size_t steps = 0;

  while (t < t1) {
    if (steps++ >= opts_.max_steps) throw NumericalError("max steps exceeded");
    h = std::min({h, opts_.max_step, t1 - t});
    const bool final_step = t + h >= t1;
    if (h < h_min && !final_step) throw NumericalError("step underflow");

    auto stage = [&](double ci, auto&& combine, State& out) {
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * combine(i);
      f_(t + ci * h, ytmp, out);
    };
    stage(c2, [&](std::size_t i) { return a21 * k[0][i]; }, k[1]);
    stage(c3, [&](std::size_t i) { return a31 * k[0][i] + a32 * k[1][i]; }, k[2]);
    stage(c4, [&](std::size_t i) { return a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]; }, k[3]);
    stage(c5,
          [&](std::size_t i) {
            return a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i];
          },
          k[4]);
    stage(1.0,
          [&](std::size_t i) {
            return a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i];
          },
          k[5]);
    for (std::size_t i = 0; i < n; ++i) {
      ynew[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] +
                            a76 * k[5][i]);
    }
    const double t_new = final_step ? t1 : t + h;
    f_(t_new, ynew, k[6]);
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                    e7 * k[6][i]);
    }

    const double en = error_norm(y, ynew, err);
    if (!std::isfinite(en) || !all_finite(ynew) || !all_finite(k[6])) {
      h *= 0.2;
      last_rejected = true;
      if (h < h_min) throw NumericalError("non-finite state");
      continue;
    }
    if (en > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      last_rejected = true;
      if (h < h_min) throw NumericalError("step underflow");
      continue;
    }

    // Accepted: store the continuous extension of this step.
    traj.seg_t0_.push_back(t);
    traj.seg_h_.push_back(h);
    const std::size_t base = traj.coeffs_.size();
    traj.coeffs_.resize(base + 5 * n);
    double* rc = traj.coeffs_.data() + base;
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = ynew[i] - y[i];
      const double bspl = h * k[0][i] - ydiff;
      rc[i] = y[i];
      rc[n + i] = ydiff;
      rc[2 * n + i] = bspl;
      rc[3 * n + i] = ydiff - h * k[6][i] - bspl;
      rc[4 * n + i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                           d6 * k[5][i] + d7 * k[6][i]);
    }
    traj.times_.push_back(t_new);
    traj.states_.push_back(ynew);

    // Events: earliest crossing inside (t, t_new].
    std::optional<std::pair<double, std::size_t>> terminal_hit;
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t e = 0; e < events_.size(); ++e) {
      const EventSpec& ev = events_[e];
      const double g_new = ev.test(t_new, ynew);
      if (crossed(ev.direction, g_prev[e], g_new)) {
        hits.emplace_back(locate(traj, ev.test, t, g_prev[e], t_new), e);
      } else if (watches_touch(ev)) {
        const double r_new = ev.rate(t_new, ynew);
        if (r_prev[e] < 0.0 && r_new >= 0.0) {
          const double tm = locate(traj, ev.rate, t, r_prev[e], t_new);
          if (ev.test(tm, traj.eval(tm)) <= ev.touch_tol) hits.emplace_back(tm, e);
        }
      }
      if (watches_touch(ev)) r_prev[e] = ev.rate(t_new, ynew);
      g_prev[e] = g_new;
    }
    std::sort(hits.begin(), hits.end());
    for (const auto& [te, e] : hits) {
      if (events_[e].terminal) {
        terminal_hit = {te, e};
        break;
      }
    }
    for (const auto& [te, e] : hits) {
      if (terminal_hit && te > terminal_hit->first) break;
      if (!events_[e].terminal) {
        traj.crossings_.push_back({te, traj.eval(te), events_[e].id});
      }
    }
    if (terminal_hit) {
      const auto [te, e] = *terminal_hit;
      State ye = traj.eval(te);
      if (te > t) {
        traj.times_.back() = te;
        traj.states_.back() = ye;
      } else {
        // Event sits on the step start; drop the step.
        traj.times_.pop_back();
        traj.states_.pop_back();
        traj.seg_t0_.pop_back();
        traj.seg_h_.pop_back();
        traj.coeffs_.resize(base);
      }
      traj.event_ = EventRecord{te, std::move(ye), events_[e].id};
      return traj;
    }

    t = t_new;
    std::swap(y, ynew);
    std::swap(k[0], k[6]);  // FSAL

    double fac = std::clamp(0.9 * std::pow(std::max(en, 1e-10), -0.2), 0.2, 10.0);
    if (last_rejected) fac = std::min(fac, 1.0);
    last_rejected = false;
    h *= fac;
  }
  return traj;
}

double Trajectory::clamp_time(double t) const {
  if (times_.empty()) throw InvalidArgument("dense evaluation outside trajectory range");
  const double lo = times_.front();
  const double hi = times_.back();
  // Tolerates round-off of a few ulps at either end, e.g. t_end * i / n.
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (!(t >= lo - slack && t <= hi + slack)) {
    throw InvalidArgument("dense evaluation outside trajectory range");
  }
  return std::clamp(t, lo, hi);
}

std::size_t Trajectory::segment_for(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - times_.begin());
  if (idx == 0) idx = 1;
  if (idx >= times_.size()) idx = times_.size() - 1;
  return idx - 1;
}

void Trajectory::eval_into(double t, std::span<double> out) const {
  t = clamp_time(t);
  if (steps() == 0) {
    std::copy(states_.front().begin(), states_.front().end(), out.begin());
    return;
  }
  const std::size_t s = segment_for(t);
  const std::size_t n = dim_;
  const double theta = (t - seg_t0_[s]) / seg_h_[s];
  const double theta1 = 1.0 - theta;
  const double* rc = coeffs_.data() + s * 5 * n;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = rc[i] +
             theta * (rc[n + i] + theta1 * (rc[2 * n + i] + theta * (rc[3 * n + i] + theta1 * rc[4 * n + i])));
  }
}

State Trajectory::eval(double t) const {
  State out(dim_);
  eval_into(t, out);
  return out;
}

double Trajectory::eval_component(double t, std::size_t component) const {
  if (component >= dim_) throw InvalidArgument("state component out of range");
  if (steps() == 0) return eval(t)[component];
  t = clamp_time(t);
  const std::size_t s = segment_for(t);
  const std::size_t n = dim_;
  const double theta = (t - seg_t0_[s]) / seg_h_[s];
  const double theta1 = 1.0 - theta;
  const double* rc = coeffs_.data() + s * 5 * n + component;
  return rc[0] + theta * (rc[n] + theta1 * (rc[2 * n] + theta * (rc[3 * n] + theta1 * rc[4 * n])));
}

Trajectory integrate(const VectorField& f, State y0, double t0, double t1, const Options& opts,
                     const std::vector<EventSpec>& events) {
  return Integrator(f, opts, events).run(std::move(y0), t0, t1);
}

State eval_dense(const Trajectory& trajectory, double t) { return trajectory.eval(t); }

}  // namespace epct::ode
