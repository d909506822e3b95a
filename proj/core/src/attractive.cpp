#include "epct/attractive.hpp"

#include <cmath>

namespace epct {

namespace {

void check_inputs(double nu, double c_bar) {
  if (!(c_bar > 0.0) || !std::isfinite(c_bar)) throw InvalidArgument("c_bar must be > 0");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidArgument("damping nu must be >= 0");
}

}  // namespace

EigenData eigensystem(double nu, double c_bar) {
  check_inputs(nu, c_bar);
  const double root = std::sqrt(nu * nu + 4.0 * c_bar);
  EigenData e;
  e.lambda_s = -0.5 * (nu + root);
  // Cancellation-free form of (-nu + root) / 2.
  e.lambda_u = 2.0 * c_bar / (nu + root);
  e.X_s = {e.lambda_s, 1.0};
  e.X_u = {e.lambda_u, 1.0};
  return e;
}

PhasePoint exact_attractive_solution(const PhasePoint& start, double nu, double c_bar, double t) {
  const EigenData e = eigensystem(nu, c_bar);
  const double y0 = start.s - 1.0 / c_bar;
  const double ls = (start.w - e.lambda_s * y0) * std::exp(e.lambda_u * t);
  const double lu = (start.w - e.lambda_u * y0) * std::exp(e.lambda_s * t);
  const double y = (ls - lu) / (e.lambda_u - e.lambda_s);
  return {ls + e.lambda_s * y, 1.0 / c_bar + y};
}

double attractive_lyapunov(const PhasePoint& point, double nu, double c) {
  const EigenData e = eigensystem(nu, c);
  return point.w - e.lambda_s * (point.s - 1.0 / c);
}

Verdict classify_attractive(const PhasePoint& point, const Params& raw, double tol) {
  const Params params = validate_params(raw);
  if (params.repulsive()) throw InvalidArgument("attractive classification needs k = -1");
  if (!(point.s > 0.0)) throw InvalidArgument("phase point needs s > 0");
  const double l_minus = attractive_lyapunov(point, params.nu, params.c_minus);
  const double l_plus = attractive_lyapunov(point, params.nu, params.c_plus);
  Verdict v;
  if (l_minus >= 0.0) {
    v.label = Label::subcritical;
    v.margin = l_minus;
    v.case_tag = l_minus <= tol ? "attractive-borderline" : "attractive";
  } else if (l_plus < -tol) {
    v.label = Label::supercritical;
    v.margin = l_plus;
    v.case_tag = "attractive";
  } else {
    v.margin = l_minus;
  }
  return v;
}

BorderlineReport borderline_check(const std::vector<double>& rho0, const std::vector<double>& du0,
                                  double nu, double c_minus, double tol) {
  if (rho0.size() != du0.size()) throw InvalidArgument("mismatched grids");
  const double lambda_u = eigensystem(nu, c_minus).lambda_u;
  BorderlineReport r;
  for (std::size_t i = 0; i < rho0.size(); ++i) {
    r.max_residual = std::max(r.max_residual, std::abs(lambda_u * du0[i] - (rho0[i] - c_minus)));
  }
  r.is_borderline = r.max_residual <= tol;
  return r;
}

}  // namespace epct
