#include "epct/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>

namespace epct {

Params validate_params(const Params& raw) {
  if (!(raw.nu >= 0.0) || !std::isfinite(raw.nu)) {
    throw InvalidArgument("damping nu must be finite and >= 0");
  }
  if (raw.k != -1 && raw.k != +1) {
    throw InvalidArgument("force sign k must be -1 or +1");
  }
  if (!(raw.c_minus > 0.0) || !std::isfinite(raw.c_minus)) {
    throw InvalidArgument("lower background bound c_minus must be > 0");
  }
  if (!std::isfinite(raw.c_plus) || raw.c_plus < raw.c_minus) {
    throw InvalidArgument("bounds out of order: c_plus < c_minus");
  }
  return raw;
}

const char* to_string(Label label) {
  switch (label) {
    case Label::subcritical: return "subcritical";
    case Label::supercritical: return "supercritical";
    case Label::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Label label_from_string(const std::string& text) {
  if (text == "subcritical") return Label::subcritical;
  if (text == "supercritical") return Label::supercritical;
  if (text == "indeterminate") return Label::indeterminate;
  throw InvalidArgument("unknown verdict label: " + text);
}

Background::Background(ConstantBackground constant) : kind_(constant) {
  if (!(constant.value > 0.0) || !std::isfinite(constant.value)) {
    throw InvalidArgument("constant background must be > 0");
  }
  bounds_ = {constant.value, constant.value};
}

Background::Background(SinusoidBackground sinusoid) : kind_(sinusoid) {
  const double amp = std::abs(sinusoid.amplitude);
  if (!std::isfinite(sinusoid.mean) || !std::isfinite(amp) || !std::isfinite(sinusoid.omega) ||
      !std::isfinite(sinusoid.phase)) {
    throw InvalidArgument("sinusoid background has non-finite fields");
  }
  if (!(sinusoid.mean - amp > 0.0)) {
    throw InvalidArgument("sinusoid background must stay away from vacuum (mean > |amplitude|)");
  }
  bounds_ = {sinusoid.mean - amp, sinusoid.mean + amp};
}

Background::Background(TableBackground table) : kind_(table) {
  if (table.t.size() < 2 || table.t.size() != table.c.size()) {
    throw InvalidArgument("table background needs >= 2 matching (t, c) samples");
  }
  if (std::adjacent_find(table.t.begin(), table.t.end(), std::greater_equal<>()) != table.t.end()) {
    throw InvalidArgument("table background times must be strictly increasing");
  }
  const auto [lo, hi] = std::minmax_element(table.c.begin(), table.c.end());
  if (!(*lo > 0.0)) {
    throw InvalidArgument("table background must be > 0");
  }
  bounds_ = {*lo, *hi};
}

namespace {

struct Evaluator {
  double t;

  double operator()(const ConstantBackground& b) const { return b.value; }

  double operator()(const SinusoidBackground& b) const {
    return b.mean + b.amplitude * std::sin(b.omega * t + b.phase);
  }

  double operator()(const TableBackground& b) const {
    if (t < b.t.front() || t > b.t.back()) {
      throw InvalidArgument("background out of range");
    }
    auto hi = std::upper_bound(b.t.begin(), b.t.end(), t);
    if (hi == b.t.end()) return b.c.back();
    const auto i = static_cast<std::size_t>(std::distance(b.t.begin(), hi)) - 1;
    const double theta = (t - b.t[i]) / (b.t[i + 1] - b.t[i]);
    return (1.0 - theta) * b.c[i] + theta * b.c[i + 1];
  }
};

}  // namespace

double Background::operator()(double t) const {
  if (!(t >= 0.0)) {
    throw InvalidArgument("background queried at negative time");
  }
  return std::visit(Evaluator{t}, kind_);
}

bool Background::fits(const Params& params, double slack) const {
  return bounds_.first >= params.c_minus - slack && bounds_.second <= params.c_plus + slack;
}

double background_eval(const Background& background, double t) { return background(t); }

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = node(i);
  return out;
}

double trapezoid(const std::vector<double>& values, double spacing) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * spacing;
}

}  // namespace epct
