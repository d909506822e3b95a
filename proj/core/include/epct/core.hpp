// Shared domain types for the Euler-Poisson critical-threshold toolkit.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace epct {

/// Bad input (parameters, domains, preconditions). Maps to CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown (integrator, Newton, quadrature). Maps to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Force sign: attractive (k = -1) or repulsive (k = +1).
enum class Force : int { attractive = -1, repulsive = +1 };

/// Damping, force sign and the bounds c- <= c(t) <= c+ of the background.
struct Params {
  double nu = 0.0;
  int k = +1;
  double c_minus = 1.0;
  double c_plus = 1.0;

  [[nodiscard]] bool repulsive() const { return k == +1; }
  bool operator==(const Params&) const = default;
};

/// Returns `raw` unchanged or throws InvalidArgument.
Params validate_params(const Params& raw);

/// Point of the reduced phase plane: w = u_x / rho, s = 1 / rho.
struct PhasePoint {
  double w = 0.0;
  double s = 1.0;
  bool operator==(const PhasePoint&) const = default;
};

enum class Label { subcritical, supercritical, indeterminate };

const char* to_string(Label label);
Label label_from_string(const std::string& text);

/// Classification of one phase point.
///
/// `margin` is a signed distance in w (at fixed s) to the nearest bounding
/// curve: positive on the subcritical side, negative on the supercritical side.
struct Verdict {
  Label label = Label::indeterminate;
  double margin = 0.0;
  std::string case_tag = "none";
};

// ---------------------------------------------------------------------------
// Background profiles c(t) along a characteristic.

struct ConstantBackground {
  double value = 1.0;
  bool operator==(const ConstantBackground&) const = default;
};

/// mean + amplitude * sin(omega * t + phase)
struct SinusoidBackground {
  double mean = 1.0;
  double amplitude = 0.0;
  double omega = 1.0;
  double phase = 0.0;
  bool operator==(const SinusoidBackground&) const = default;
};

/// Sampled c(t), piecewise-linear between samples.
struct TableBackground {
  std::vector<double> t;
  std::vector<double> c;
  bool operator==(const TableBackground&) const = default;
};

class Background {
 public:
  using Kind = std::variant<ConstantBackground, SinusoidBackground, TableBackground>;

  Background() : Background(ConstantBackground{}) {}
  explicit Background(ConstantBackground constant);
  explicit Background(SinusoidBackground sinusoid);
  explicit Background(TableBackground table);

  static Background constant(double value) { return Background(ConstantBackground{value}); }
  static Background sinusoid(double mean, double amplitude, double omega = 1.0, double phase = 0.0) {
    return Background(SinusoidBackground{mean, amplitude, omega, phase});
  }

  /// c(t). Throws InvalidArgument for t < 0 or a table queried out of range.
  [[nodiscard]] double operator()(double t) const;

  [[nodiscard]] const Kind& kind() const { return kind_; }
  [[nodiscard]] double lower_bound() const { return bounds_.first; }
  [[nodiscard]] double upper_bound() const { return bounds_.second; }

  /// True when [lower, upper] sits inside [params.c_minus, params.c_plus].
  [[nodiscard]] bool fits(const Params& params, double slack = 1e-12) const;

  bool operator==(const Background& other) const { return kind_ == other.kind_; }

 private:
  Kind kind_;
  std::pair<double, double> bounds_;
};

double background_eval(const Background& background, double t);

// ---------------------------------------------------------------------------
// Grids

/// Uniform node grid on [lo, hi] with n >= 2 nodes.
struct UniformGrid {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t n = 2;

  [[nodiscard]] double spacing() const { return (hi - lo) / static_cast<double>(n - 1); }
  [[nodiscard]] double node(std::size_t i) const {
    return i + 1 == n ? hi : lo + static_cast<double>(i) * spacing();
  }
  [[nodiscard]] std::vector<double> nodes() const;
  bool operator==(const UniformGrid&) const = default;
};

/// Trapezoid rule of samples on a uniform grid.
double trapezoid(const std::vector<double>& values, double spacing);

}  // namespace epct
