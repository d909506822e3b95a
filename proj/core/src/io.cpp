#include "epct/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace epct {

json number_to_json(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw InvalidArgument("expected a number, got " + j.dump());
}

namespace {

std::vector<double> numbers_from(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(number_from_json(x));
  return v;
}

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  if constexpr (std::is_same_v<T, double>) {
    return number_from_json(j.at(key));
  } else {
    return j.at(key).get<T>();
  }
}

}  // namespace

void to_json(json& j, const Params& p) {
  j = {{"nu", p.nu}, {"k", p.k}, {"c_minus", p.c_minus}, {"c_plus", p.c_plus}};
}
void from_json(const json& j, Params& p) {
  Params d;
  p.nu = field(j, "nu", d.nu);
  p.k = field(j, "k", d.k);
  p.c_minus = field(j, "c_minus", d.c_minus);
  p.c_plus = field(j, "c_plus", d.c_plus);
}

void to_json(json& j, const Background& b) {
  std::visit(
      [&j](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, ConstantBackground>) {
          j = {{"kind", "constant"}, {"value", kind.value}};
        } else if constexpr (std::is_same_v<T, SinusoidBackground>) {
          j = {{"kind", "sinusoid"},
               {"mean", kind.mean},
               {"amplitude", kind.amplitude},
               {"omega", kind.omega},
               {"phase", kind.phase}};
        } else {
          j = {{"kind", "table"}, {"t", kind.t}, {"c", kind.c}};
        }
      },
      b.kind());
}
void from_json(const json& j, Background& b) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    b = Background(ConstantBackground{number_from_json(j.at("value"))});
  } else if (kind == "sinusoid") {
    SinusoidBackground s;
    s.mean = field(j, "mean", s.mean);
    s.amplitude = field(j, "amplitude", s.amplitude);
    s.omega = field(j, "omega", s.omega);
    s.phase = field(j, "phase", s.phase);
    b = Background(s);
  } else if (kind == "table") {
    b = Background(TableBackground{numbers_from(j.at("t")), numbers_from(j.at("c"))});
  } else {
    throw InvalidArgument("unknown background kind: " + kind);
  }
}

void to_json(json& j, const PhasePoint& p) { j = {{"w", p.w}, {"s", p.s}}; }
void from_json(const json& j, PhasePoint& p) {
  p.w = number_from_json(j.at("w"));
  p.s = number_from_json(j.at("s"));
}

void to_json(json& j, const Verdict& v) {
  j = {{"label", to_string(v.label)}, {"margin", number_to_json(v.margin)}, {"case_tag", v.case_tag}};
}
void from_json(const json& j, Verdict& v) {
  v.label = label_from_string(j.at("label").get<std::string>());
  v.margin = number_from_json(j.at("margin"));
  v.case_tag = j.at("case_tag").get<std::string>();
}

void to_json(json& j, const DomainReport& r) {
  j = {{"s_tilde", number_to_json(r.s_tilde)},
       {"s_star", number_to_json(r.s_star)},
       {"s_star_star", number_to_json(r.s_star_star)},
       {"gamma1", number_to_json(r.gamma1)},
       {"gamma2", number_to_json(r.gamma2)},
       {"regime_P", to_string(r.regime_P)},
       {"regime_N", to_string(r.regime_N)}};
}
void from_json(const json& j, DomainReport& r) {
  r.s_tilde = number_from_json(j.at("s_tilde"));
  r.s_star = number_from_json(j.at("s_star"));
  r.s_star_star = number_from_json(j.at("s_star_star"));
  r.gamma1 = number_from_json(j.at("gamma1"));
  r.gamma2 = number_from_json(j.at("gamma2"));
  r.regime_P = j.at("regime_P").get<std::string>() == "bounded" ? Regime::bounded : Regime::unbounded;
  r.regime_N = j.at("regime_N").get<std::string>() == "bounded" ? Regime::bounded : Regime::unbounded;
}

void to_json(json& j, const ClosingReport& r) {
  j = {{"holds", r.holds},
       {"case_tag", r.case_tag},
       {"s_plus", number_to_json(r.s_plus)},
       {"s_star_star", number_to_json(r.s_star_star)},
       {"sign_test_holds", r.sign_test_holds}};
}
void from_json(const json& j, ClosingReport& r) {
  r.holds = j.at("holds").get<bool>();
  r.case_tag = j.at("case_tag").get<std::string>();
  r.s_plus = number_from_json(j.at("s_plus"));
  r.s_star_star = number_from_json(j.at("s_star_star"));
  r.sign_test_holds = j.at("sign_test_holds").get<bool>();
}

void to_json(json& j, const SweepGrid& g) {
  j = {{"w_lo", g.w_lo}, {"w_hi", g.w_hi}, {"nw", g.nw},
       {"s_lo", g.s_lo}, {"s_hi", g.s_hi}, {"ns", g.ns}};
}
void from_json(const json& j, SweepGrid& g) {
  SweepGrid d;
  g.w_lo = field(j, "w_lo", d.w_lo);
  g.w_hi = field(j, "w_hi", d.w_hi);
  g.nw = field(j, "nw", d.nw);
  g.s_lo = field(j, "s_lo", d.s_lo);
  g.s_hi = field(j, "s_hi", d.s_hi);
  g.ns = field(j, "ns", d.ns);
}

void to_json(json& j, const UniformGrid& g) { j = {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}}; }
void from_json(const json& j, UniformGrid& g) {
  UniformGrid d;
  g.lo = field(j, "lo", d.lo);
  g.hi = field(j, "hi", d.hi);
  g.n = field(j, "n", d.n);
}

void to_json(json& j, const DatumSpec& d) {
  j = {{"kind", d.kind}, {"c_bar", d.c_bar}, {"a", d.a}, {"b", d.b}};
  if (d.kind == "table") {
    j["x"] = d.x;
    j["rho"] = d.rho;
    j["u"] = d.u;
  }
}
void from_json(const json& j, DatumSpec& d) {
  DatumSpec def;
  d.kind = field(j, "kind", def.kind);
  d.c_bar = field(j, "c_bar", def.c_bar);
  d.a = field(j, "a", def.a);
  d.b = field(j, "b", def.b);
  d.x = j.contains("x") ? numbers_from(j.at("x")) : std::vector<double>{};
  d.rho = j.contains("rho") ? numbers_from(j.at("rho")) : std::vector<double>{};
  d.u = j.contains("u") ? numbers_from(j.at("u")) : std::vector<double>{};
}

void to_json(json& j, const EnergyReport& r) {
  j = {{"H", r.H},         {"kinetic", r.kinetic}, {"field", r.field},
       {"internal", r.internal}, {"c_minus", r.c_minus}, {"c_plus", r.c_plus}};
}
void from_json(const json& j, EnergyReport& r) {
  r.H = number_from_json(j.at("H"));
  r.kinetic = number_from_json(j.at("kinetic"));
  r.field = number_from_json(j.at("field"));
  r.internal = number_from_json(j.at("internal"));
  r.c_minus = number_from_json(j.at("c_minus"));
  r.c_plus = number_from_json(j.at("c_plus"));
  r.phi.clear();
}

void to_json(json& j, const RegularityReport& r) {
  j = {{"verdict", r.verdict},
       {"global", r.global},
       {"energy", r.energy},
       {"closing", r.closing},
       {"checked_points", r.checked_points},
       {"failing_points", r.failing_points},
       {"min_margin", number_to_json(r.min_margin)},
       {"details", r.details}};
}

void to_json(json& j, const SimOutcome& o) {
  j = {{"start", o.start},
       {"params", o.params},
       {"horizon", o.horizon},
       {"steps", o.trajectory.steps()},
       {"t_end", o.trajectory.t_end()},
       {"final_state", {{"w", o.trajectory.final_state()[0]}, {"s", o.trajectory.final_state()[1]}}}};
  if (o.blowup) {
    j["blowup"] = {{"t", o.blowup->t}, {"w", o.blowup->w}};
  } else {
    j["blowup"] = nullptr;
  }
  if (o.bound_check) {
    j["bound_check"] = {{"bound", o.bound_check->bound}, {"satisfied", o.bound_check->satisfied}};
  } else {
    j["bound_check"] = nullptr;
  }
}

void to_json(json& j, const LyapunovCheck& c) {
  j = {{"function", c.function},
       {"precondition_met", c.precondition_met},
       {"start_value", number_to_json(c.start_value)},
       {"max_violation", c.max_violation},
       {"checked_until", c.checked_until}};
  j["first_violation_t"] = c.first_violation_t ? json(*c.first_violation_t) : json(nullptr);
  j["domain_exit_t"] = c.domain_exit_t ? json(*c.domain_exit_t) : json(nullptr);
  if (!c.precondition_met) j["status"] = "precondition not met";
}

void to_json(json& j, const ComparisonReport& r) {
  j = {{"mode", r.mode == CompareMode::weak ? "weak" : "strong"},
       {"tol", r.tol},
       {"checks", r.checks},
       {"all_preserved", r.all_preserved()}};
}

void to_json(json& j, const NeutralityReport& r) {
  j = {{"t", r.t},
       {"integral", r.integral},
       {"l1_fluctuation", r.l1_fluctuation},
       {"total_variation", r.total_variation},
       {"du0_integral", r.du0_integral},
       {"du0_neutral", r.du0_neutral}};
}

void to_json(json& j, const AnomalousReport& r) {
  j = {{"t", r.t},
       {"c_bar", r.c_bar},
       {"R", r.R},
       {"J", r.J},
       {"L1", r.L1},
       {"control_J", r.control_J},
       {"control_L1", r.control_L1},
       {"spread_J", r.spread_J},
       {"spread_L1", r.spread_L1},
       {"control_spread_J", r.control_spread_J},
       {"control_spread_L1", r.control_spread_L1},
       {"non_convergent", r.non_convergent}};
}
void from_json(const json& j, AnomalousReport& r) {
  r.t = j.at("t").get<double>();
  r.c_bar = j.at("c_bar").get<double>();
  r.R = j.at("R").get<std::vector<double>>();
  r.J = j.at("J").get<std::vector<double>>();
  r.L1 = j.at("L1").get<std::vector<double>>();
  r.control_J = j.at("control_J").get<std::vector<double>>();
  r.control_L1 = j.at("control_L1").get<std::vector<double>>();
  r.spread_J = j.at("spread_J").get<double>();
  r.spread_L1 = j.at("spread_L1").get<double>();
  r.control_spread_J = j.at("control_spread_J").get<double>();
  r.control_spread_L1 = j.at("control_spread_L1").get<double>();
  r.non_convergent = j.at("non_convergent").get<bool>();
}

void to_json(json& j, const NonexistenceReport& r) {
  j = {{"t", r.t},         {"c_bar", r.c_bar}, {"R", r.R},
       {"delta", r.delta}, {"limit", r.limit}, {"limit_nonzero", r.limit_nonzero}};
}
void from_json(const json& j, NonexistenceReport& r) {
  r.t = j.at("t").get<double>();
  r.c_bar = j.at("c_bar").get<double>();
  r.R = j.at("R").get<std::vector<double>>();
  r.delta = j.at("delta").get<std::vector<double>>();
  r.limit = j.at("limit").get<double>();
  r.limit_nonzero = j.at("limit_nonzero").get<bool>();
}

void to_json(json& j, const LabelBlowUp& b) {
  j = {{"t", b.t}, {"alpha", b.alpha}, {"index", b.index}};
}

namespace csv {

std::string num(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string curve(const ThresholdCurve& c) {
  std::ostringstream out;
  out << "s,g\n";
  for (const auto& [s, g] : c.samples()) out << num(s) << ',' << num(g) << '\n';
  return out.str();
}

std::string trajectory(const ode::Trajectory& traj, std::size_t dense_samples) {
  std::ostringstream out;
  out << "t,w,s\n";
  if (dense_samples == 0) {
    for (std::size_t i = 0; i < traj.times().size(); ++i) {
      const auto& y = traj.states()[i];
      out << num(traj.times()[i]) << ',' << num(y[0]) << ',' << num(y[1]) << '\n';
    }
    return out.str();
  }
  const double t0 = traj.t_begin();
  const double t1 = traj.t_end();
  for (std::size_t i = 0; i <= dense_samples; ++i) {
    const double t = i == dense_samples ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / dense_samples;
    const auto y = traj.eval(t);
    out << num(t) << ',' << num(y[0]) << ',' << num(y[1]) << '\n';
  }
  return out.str();
}

std::string fluid_state(const FluidState& st) {
  std::ostringstream out;
  out << "alpha,x,rho,u,Gamma,E\n";
  for (std::size_t i = 0; i < st.alpha.size(); ++i) {
    out << num(st.alpha[i]) << ',' << num(st.x[i]) << ',' << num(st.rho[i]) << ',' << num(st.u[i])
        << ',' << num(st.Gamma[i]) << ',' << num(st.E[i]) << '\n';
  }
  return out.str();
}

std::string potential(const UniformGrid& grid, const std::vector<double>& rho,
                      const std::vector<double>& phi) {
  if (rho.size() != grid.n || phi.size() != grid.n) throw InvalidArgument("samples must match grid");
  std::ostringstream out;
  out << "x,rho,phi\n";
  for (std::size_t i = 0; i < grid.n; ++i) {
    out << num(grid.node(i)) << ',' << num(rho[i]) << ',' << num(phi[i]) << '\n';
  }
  return out.str();
}

}  // namespace csv

}  // namespace epct
