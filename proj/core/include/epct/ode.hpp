// Adaptive explicit Runge-Kutta integration with dense output and events.
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace epct::ode {

using State = std::vector<double>;

/// dy/dt = f(t, y), written into `dydt` (same length as y).
using VectorField = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 10'000'000;
  /// Initial step; <= 0 selects one automatically.
  double first_step = 0.0;
};

enum class Direction { any, decreasing, increasing };

using ScalarFn = std::function<double(double t, std::span<const double> y)>;

struct EventSpec {
  std::string id;
  ScalarFn test;
  Direction direction = Direction::any;
  bool terminal = true;
  /// Optional d(test)/dt. With touch_tol > 0 the event also fires at an
  /// interior minimum of test (rate crossing upward through 0) whose value
  /// is at most touch_tol, which catches tangential contact with zero.
  ScalarFn rate = {};
  double touch_tol = 0.0;
};

struct EventRecord {
  double t = 0.0;
  State state;
  std::string id;
};

/// Accepted steps of an integration plus the per-step continuous extension.
class Trajectory {
 public:
  Trajectory() = default;

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  [[nodiscard]] const std::vector<State>& states() const { return states_; }
  [[nodiscard]] double t_begin() const { return times_.front(); }
  [[nodiscard]] double t_end() const { return times_.back(); }
  [[nodiscard]] const State& final_state() const { return states_.back(); }
  [[nodiscard]] std::size_t steps() const { return times_.empty() ? 0 : times_.size() - 1; }

  /// Terminal event that stopped the integration, if any.
  [[nodiscard]] const std::optional<EventRecord>& event() const { return event_; }
  /// Non-terminal event crossings in time order.
  [[nodiscard]] const std::vector<EventRecord>& crossings() const { return crossings_; }

  /// Interpolated state at t in [t_begin, t_end] (a few ulps of slack at the
  /// ends); throws InvalidArgument otherwise.
  [[nodiscard]] State eval(double t) const;
  void eval_into(double t, std::span<double> out) const;
  [[nodiscard]] double eval_component(double t, std::size_t component) const;

 private:
  friend class Integrator;

  double clamp_time(double t) const;
  std::size_t segment_for(double t) const;

  std::size_t dim_ = 0;
  std::vector<double> times_;
  std::vector<State> states_;
  // Per step: start time, width and 5*dim interpolation coefficients.
  std::vector<double> seg_t0_;
  std::vector<double> seg_h_;
  std::vector<double> coeffs_;
  std::optional<EventRecord> event_;
  std::vector<EventRecord> crossings_;
};

Trajectory integrate(const VectorField& f, State y0, double t0, double t1, const Options& opts = {},
                     const std::vector<EventSpec>& events = {});

State eval_dense(const Trajectory& trajectory, double t);

}  // namespace epct::ode
