#include "epct/cli/run_config.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace epct::cli {

namespace {

constexpr std::array<std::pair<Command, const char*>, 7> kCommands{{
    {Command::classify, "classify"},
    {Command::sweep, "sweep"},
    {Command::simulate, "simulate"},
    {Command::thresholds, "thresholds"},
    {Command::resonance, "resonance"},
    {Command::characteristics, "characteristics"},
    {Command::coldion, "coldion"},
}};

constexpr std::array<std::pair<Format, const char*>, 3> kFormats{{
    {Format::csv, "csv"},
    {Format::json, "json"},
    {Format::svg, "svg"},
}};

double number(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number_from_json(j.at(key)) : fallback;
}

template <typename T>
T get(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw InvalidArgument(std::string(name) + " must be finite");
}

}  // namespace

const char* to_string(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "classify";
}

Command command_from_string(const std::string& text) {
  for (const auto& [c, name] : kCommands) {
    if (text == name) return c;
  }
  throw InvalidArgument("unknown command: " + text);
}

const char* to_string(Format format) {
  for (const auto& [f, name] : kFormats) {
    if (f == format) return name;
  }
  return "json";
}

Format format_from_string(const std::string& text) {
  for (const auto& [f, name] : kFormats) {
    if (text == name) return f;
  }
  throw InvalidArgument("unknown format: " + text);
}

bool supports(Command command, Format format) {
  switch (command) {
    case Command::sweep:
    case Command::thresholds: return true;
    case Command::classify: return format == Format::json;
    default: return format != Format::svg;
  }
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  try {
    RunConfig c;
    if (j.contains("command")) c.command = command_from_string(j.at("command").get<std::string>());
    if (j.contains("params")) c.params = j.at("params").get<Params>();
    if (j.contains("background") && !j.at("background").is_null()) {
      c.background = j.at("background").get<Background>();
    }
    c.random_background = get(j, "random_background", c.random_background);
    if (j.contains("point")) c.point = j.at("point").get<PhasePoint>();
    if (j.contains("grid")) c.grid = j.at("grid").get<SweepGrid>();
    c.simulate_cells = get(j, "simulate_cells", c.simulate_cells);
    c.horizon = number(j, "horizon", c.horizon);
    c.tol = number(j, "tol", c.tol);
    c.rel_tol = number(j, "rel_tol", c.rel_tol);
    c.dense_samples = get(j, "dense_samples", c.dense_samples);
    c.s_max = number(j, "s_max", c.s_max);
    c.epsilon = number(j, "epsilon", c.epsilon);
    c.phase = number(j, "phase", c.phase);
    if (j.contains("datum")) c.datum = j.at("datum").get<DatumSpec>();
    if (j.contains("labels")) c.labels = j.at("labels").get<UniformGrid>();
    if (j.contains("snapshot_times")) {
      c.snapshot_times.clear();
      for (const auto& t : j.at("snapshot_times")) c.snapshot_times.push_back(number_from_json(t));
    }
    if (j.contains("x_grid")) c.x_grid = j.at("x_grid").get<UniformGrid>();
    c.out = get(j, "out", c.out);
    if (j.contains("format")) c.format = format_from_string(j.at("format").get<std::string>());
    c.jobs = get(j, "jobs", c.jobs);
    c.seed = get(j, "seed", c.seed);
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
}

json config_to_json(const RunConfig& c) {
  json j = {
      {"command", to_string(c.command)},
      {"params", c.params},
      {"background", c.background ? json(*c.background) : json(nullptr)},
      {"random_background", c.random_background},
      {"point", c.point},
      {"grid", c.grid},
      {"simulate_cells", c.simulate_cells},
      {"horizon", c.horizon},
      {"tol", c.tol},
      {"rel_tol", c.rel_tol},
      {"dense_samples", c.dense_samples},
      {"s_max", c.s_max},
      {"epsilon", c.epsilon},
      {"phase", c.phase},
      {"datum", c.datum},
      {"labels", c.labels},
      {"snapshot_times", c.snapshot_times},
      {"x_grid", c.x_grid},
      {"out", c.out},
      {"format", to_string(c.format)},
      {"jobs", c.jobs},
      {"seed", c.seed},
  };
  return j;
}

void validate_config(const RunConfig& c) {
  validate_params(c.params);
  require_finite(c.point.w, "point.w");
  require_finite(c.point.s, "point.s");
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw InvalidArgument("horizon must be finite and > 0");
  if (!(c.tol >= 0.0) || !std::isfinite(c.tol)) throw InvalidArgument("tol must be finite and >= 0");
  if (!(c.rel_tol > 0.0 && c.rel_tol < 1e-2)) throw InvalidArgument("rel_tol must lie in (0, 1e-2)");
  if (c.jobs == 0) throw InvalidArgument("jobs must be >= 1");
  if (!supports(c.command, c.format)) {
    throw InvalidArgument(std::string("format ") + to_string(c.format) + " is not available for " +
                          to_string(c.command));
  }
  switch (c.command) {
    case Command::classify:
    case Command::simulate:
      if (!(c.point.s > 0.0)) throw InvalidArgument("start point needs s > 0");
      break;
    case Command::sweep:
      if (c.grid.nw == 0 || c.grid.ns == 0) throw InvalidArgument("sweep grid needs nw, ns >= 1");
      if (!(c.grid.w_lo < c.grid.w_hi) || !(c.grid.s_lo >= 0.0) || !(c.grid.s_lo < c.grid.s_hi)) {
        throw InvalidArgument("sweep grid needs w_lo < w_hi and 0 <= s_lo < s_hi");
      }
      require_finite(c.grid.w_lo, "grid.w_lo");
      require_finite(c.grid.w_hi, "grid.w_hi");
      require_finite(c.grid.s_hi, "grid.s_hi");
      break;
    case Command::thresholds:
      if (!(c.s_max > 0.0) || !std::isfinite(c.s_max)) throw InvalidArgument("s_max must be > 0");
      break;
    case Command::resonance:
      if (!(std::abs(c.epsilon) < 1.0)) throw InvalidArgument("resonance needs |epsilon| < 1");
      break;
    case Command::characteristics:
      if (c.labels.n < 2 || !(c.labels.lo < c.labels.hi)) {
        throw InvalidArgument("labels need n >= 2 and lo < hi");
      }
      break;
    case Command::coldion:
      if (c.x_grid.n < 3 || !(c.x_grid.lo < c.x_grid.hi)) {
        throw InvalidArgument("x_grid needs n >= 3 and lo < hi");
      }
      break;
  }
  if (c.background && !c.background->fits(c.params)) {
    throw InvalidArgument("background leaves [c_minus, c_plus]");
  }
}

}  // namespace epct::cli
