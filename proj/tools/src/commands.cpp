#include "epct/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epct/attractive.hpp"
#include "epct/characteristics.hpp"
#include "epct/cli/output.hpp"
#include "epct/cli/svg.hpp"
#include "epct/coldion.hpp"
#include "epct/io.hpp"
#include "epct/parallel.hpp"
#include "epct/phaseplane.hpp"
#include "epct/thresholds.hpp"

namespace epct::cli {

namespace {

using csv::num;

const std::vector<double> kDemoRadii{1e2, 1e3, 1e4, 1e5};

std::string csv_header(const RunConfig& c) {
  return "# command=" + std::string(to_string(c.command)) + " seed=" + std::to_string(c.seed) + "\n";
}

std::string json_document(const RunConfig& c, json body) {
  json doc = {{"command", to_string(c.command)}, {"seed", c.seed}, {"config", config_to_json(c)}};
  doc.update(body);
  return doc.dump(2) + "\n";
}

std::string svg_document(const RunConfig& c, const std::string& svg) {
  // Keep the XML declaration first and record the seed right after it.
  const auto eol = svg.find('\n');
  return svg.substr(0, eol + 1) + "<!-- command=" + to_string(c.command) +
         " seed=" + std::to_string(c.seed) + " -->\n" + svg.substr(eol + 1);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

ode::Options sim_options(const RunConfig& c) {
  ode::Options opts = simulation_options();
  opts.rel_tol = c.rel_tol;
  opts.abs_tol = std::min(opts.abs_tol, c.rel_tol * 1e-2);
  return opts;
}

Background background_for(const RunConfig& c, std::uint64_t stream) {
  if (c.random_background) return random_admissible_sinusoid(c.params, c.seed, stream);
  if (c.background) return *c.background;
  return Background::constant(c.params.c_minus);
}

double thresholds_reach(const RunConfig& c, double s_hi) { return std::max({c.s_max, s_hi, 1.0}); }

// ---------------------------------------------------------------------------

std::string run_classify(const RunConfig& c) {
  json body;
  body["point"] = c.point;
  if (c.params.repulsive()) {
    const RepulsiveThresholds th(c.params, thresholds_reach(c, 2.0 * c.point.s));
    const Verdict v = th.classify(c.point, c.tol);
    body["verdict"] = v;
    body["closing"] = th.closing();
    body["breakdown_bound"] = optional_number(
        v.label == Label::supercritical ? breakdown_time_bound(c.point, th, c.tol) : std::nullopt);
  } else {
    body["verdict"] = classify_attractive(c.point, c.params, c.tol);
  }
  return json_document(c, body);
}

std::string sweep_csv(const RunConfig& c, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << csv_header(c) << "w0,s0,verdict,margin,case_tag,blowup_time,bound\n";
  for (const auto& r : rows) {
    os << num(r.point.w) << ',' << num(r.point.s) << ',' << to_string(r.verdict.label) << ','
       << num(r.verdict.margin) << ',' << r.verdict.case_tag << ','
       << (r.blowup_time ? num(*r.blowup_time) : "") << ',' << (r.bound ? num(*r.bound) : "")
       << '\n';
  }
  return os.str();
}

std::string run_sweep(const RunConfig& c) {
  const auto rows = sweep_rows(c);
  if (c.format == Format::csv) return sweep_csv(c, rows);
  if (c.format == Format::svg) {
    std::vector<SweepCell> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) cells.push_back({r.point, r.verdict});
    std::vector<Polyline> curves;
    if (c.params.repulsive()) {
      curves = threshold_polylines(RepulsiveThresholds(c.params, thresholds_reach(c, c.grid.s_hi)));
    } else {
      curves = attractive_polylines(c.params, c.grid.s_lo, c.grid.s_hi);
    }
    return svg_document(c, emit_svg(c.grid, cells, curves));
  }
  json cells = json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : rows) {
    ++counts[static_cast<int>(r.verdict.label)];
    cells.push_back({{"w0", r.point.w},
                     {"s0", r.point.s},
                     {"verdict", to_string(r.verdict.label)},
                     {"margin", number_to_json(r.verdict.margin)},
                     {"case_tag", r.verdict.case_tag},
                     {"blowup_time", optional_number(r.blowup_time)},
                     {"bound", optional_number(r.bound)}});
  }
  json body = {{"counts",
                {{"subcritical", counts[0]}, {"supercritical", counts[1]}, {"indeterminate", counts[2]}}},
               {"cells", cells}};
  if (c.params.repulsive()) body["closing"] = closing_condition(c.params);
  return json_document(c, body);
}

std::string run_simulate(const RunConfig& c) {
  SimOutcome outcome = simulate_ws(c.point, c.params, background_for(c, 0), c.horizon, sim_options(c));
  std::optional<Verdict> verdict;
  if (c.params.repulsive()) {
    const RepulsiveThresholds th(c.params, thresholds_reach(c, 2.0 * c.point.s));
    attach_bound_check(outcome, th);
    verdict = th.classify(c.point, c.tol);
  } else {
    verdict = classify_attractive(c.point, c.params, c.tol);
  }
  if (c.format == Format::csv) return csv_header(c) + csv::trajectory(outcome.trajectory, c.dense_samples);
  json body = {{"outcome", outcome}, {"background", background_for(c, 0)}, {"verdict", *verdict}};
  return json_document(c, body);
}

json curve_json(const char* name, const ThresholdCurve& curve) {
  json samples = json::array();
  for (const auto& [s, g] : curve.samples()) samples.push_back({s, g});
  return {{"name", name},
          {"branch", to_string(curve.branch())},
          {"c", curve.c_param()},
          {"nu", curve.nu()},
          {"anchor", curve.anchor()},
          {"s_lo", curve.s_lo()},
          {"s_hi", curve.s_hi()},
          {"closed", curve.closed()},
          {"total_arc_time", curve.total_arc_time()},
          {"samples", samples}};
}

std::string run_thresholds(const RunConfig& c) {
  if (!c.params.repulsive()) throw InvalidArgument("thresholds needs a repulsive parameter set (k = +1)");
  const RepulsiveThresholds th(c.params, c.s_max);
  std::vector<std::pair<const char*, const ThresholdCurve*>> curves{{"P-", &th.p_minus()}};
  if (th.n_plus()) curves.emplace_back("N+", &*th.n_plus());
  curves.emplace_back("P+", &th.p_plus());
  if (th.n_minus()) curves.emplace_back("N-", &*th.n_minus());

  if (c.format == Format::csv) {
    std::ostringstream os;
    os << csv_header(c) << "curve,s,g\n";
    for (const auto& [name, curve] : curves) {
      for (const auto& [s, g] : curve->samples()) os << name << ',' << num(s) << ',' << num(g) << '\n';
    }
    return os.str();
  }
  if (c.format == Format::svg) {
    double reach = 0.0;
    for (const auto& entry : curves) {
      for (const auto& sample : entry.second->samples()) reach = std::max(reach, sample.second);
    }
    reach = std::max(1.0, 1.1 * reach);
    SweepGrid window{-reach, reach, 0, 0.0, c.s_max, 0};
    return svg_document(c, emit_svg(window, {}, threshold_polylines(th)));
  }
  json list = json::array();
  for (const auto& [name, curve] : curves) list.push_back(curve_json(name, *curve));
  const double s_star = th.p_minus().closed() ? th.p_minus().s_hi() : c.s_max;
  json body = {{"closing", th.closing()},
               {"domain_minus", domain_endpoints(c.params.c_minus, c.params.c_plus, c.params.nu, s_star)},
               {"curves", list}};
  return json_document(c, body);
}

std::string run_resonance(const RunConfig& c) {
  const SimOutcome outcome = resonance_demo(c.epsilon, c.horizon, c.phase, sim_options(c));
  if (c.format == Format::csv) return csv_header(c) + csv::trajectory(outcome.trajectory, c.dense_samples);
  json body = {{"epsilon", c.epsilon},
               {"phase", c.phase},
               {"horizon", c.horizon},
               {"blow_up", outcome.blowup.has_value()},
               {"t_star", outcome.blowup ? json(outcome.blowup->t) : json(nullptr)},
               {"outcome", outcome}};
  return json_document(c, body);
}

std::string run_characteristics(const RunConfig& c) {
  const double c_bar = c.datum.c_bar;
  if (c.datum.kind == "anomalous" || c.datum.kind == "nonexistence") {
    if (c.format == Format::csv) throw InvalidArgument("demo data only render as json");
    json body;
    if (c.datum.kind == "anomalous") {
      body["anomalous"] = anomalous_demo(kDemoRadii, c.horizon, c_bar);
    } else {
      body["nonexistence"] = nonexistence_demo(c_bar, c.horizon, kDemoRadii);
    }
    return json_document(c, body);
  }
  const InitialDatum datum(c.datum);
  CharacteristicsOptions opts;
  opts.ode.rel_tol = c.rel_tol;
  opts.snapshot_times = c.snapshot_times;
  opts.jobs = c.jobs;
  const auto result = solve_characteristics(datum, c_bar, c.params.k, c.params.nu, c.labels, c.horizon, opts);
  if (c.format == Format::csv) {
    std::ostringstream os;
    os << csv_header(c) << "t,alpha,x,rho,u,Gamma,E\n";
    for (const auto& st : result.states) {
      for (std::size_t i = 0; i < st.alpha.size(); ++i) {
        os << num(st.t) << ',' << num(st.alpha[i]) << ',' << num(st.x[i]) << ',' << num(st.rho[i])
           << ',' << num(st.u[i]) << ',' << num(st.Gamma[i]) << ',' << num(st.E[i]) << '\n';
      }
    }
    return os.str();
  }
  json times = json::array();
  for (const auto& st : result.states) times.push_back(st.t);
  json body = {{"snapshot_times", times},
               {"blowup", result.blowup ? json(*result.blowup) : json(nullptr)},
               {"gamma_consistency", result.gamma_consistency},
               {"neutrality", neutrality_report(result.states, c_bar)}};
  return json_document(c, body);
}

std::string run_coldion(const RunConfig& c) {
  const InitialDatum datum(c.datum);
  ColdIonSetup setup;
  setup.grid = c.x_grid;
  setup.nu = c.params.nu;
  for (std::size_t i = 0; i < c.x_grid.n; ++i) {
    const double x = c.x_grid.node(i);
    setup.rho0.push_back(datum.rho0(x));
    setup.u0.push_back(datum.u0(x));
  }
  const RegularityReport report = global_regularity_check(setup);
  if (c.format == Format::csv) {
    return csv_header(c) + csv::potential(setup.grid, setup.rho0, report.energy.phi);
  }
  return json_document(c, {{"regularity", report}});
}

}  // namespace

std::vector<SweepRow> sweep_rows(const RunConfig& c) {
  std::vector<SweepRow> rows(c.grid.size());
  std::optional<RepulsiveThresholds> th;
  if (c.params.repulsive()) th.emplace(c.params, thresholds_reach(c, c.grid.s_hi));
  const ode::Options opts = sim_options(c);
  parallel_for(rows.size(), c.jobs, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.point = c.grid.cell(i);
    if (th) {
      row.verdict = th->classify(row.point, c.tol);
      if (row.verdict.label == Label::supercritical) row.bound = breakdown_time_bound(row.point, *th, c.tol);
    } else {
      row.verdict = classify_attractive(row.point, c.params, c.tol);
    }
    if (c.simulate_cells) {
      const SimOutcome outcome = simulate_ws(row.point, c.params, background_for(c, i), c.horizon, opts);
      if (outcome.blowup) row.blowup_time = outcome.blowup->t;
    }
  });
  return rows;
}

std::string render(const RunConfig& c) {
  switch (c.command) {
    case Command::classify: return run_classify(c);
    case Command::sweep: return run_sweep(c);
    case Command::simulate: return run_simulate(c);
    case Command::thresholds: return run_thresholds(c);
    case Command::resonance: return run_resonance(c);
    case Command::characteristics: return run_characteristics(c);
    case Command::coldion: return run_coldion(c);
  }
  throw InvalidArgument("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config);
    const std::string doc = render(config);
    if (config.out.empty()) {
      out << doc;
      out.flush();
    } else {
      write_atomic(config.out, doc);
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << error_document(kExitInvalid, e.what()).dump() << '\n';
    return kExitInvalid;
  } catch (const json::exception& e) {
    err << error_document(kExitInvalid, e.what()).dump() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << error_document(kExitNumerical, e.what()).dump() << '\n';
    return kExitNumerical;
  }
}

}  // namespace epct::cli
