// JSON and CSV encodings of the library types.
#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "epct/attractive.hpp"
#include "epct/characteristics.hpp"
#include "epct/coldion.hpp"
#include "epct/core.hpp"
#include "epct/phaseplane.hpp"
#include "epct/thresholds.hpp"

namespace epct {

using json = nlohmann::json;

// Non-finite doubles are encoded as the strings "inf", "-inf" and "nan".
json number_to_json(double value);
double number_from_json(const json& j);

void to_json(json& j, const Params& p);
void from_json(const json& j, Params& p);
void to_json(json& j, const Background& b);
void from_json(const json& j, Background& b);
void to_json(json& j, const PhasePoint& p);
void from_json(const json& j, PhasePoint& p);
void to_json(json& j, const Verdict& v);
void from_json(const json& j, Verdict& v);
void to_json(json& j, const DomainReport& r);
void from_json(const json& j, DomainReport& r);
void to_json(json& j, const ClosingReport& r);
void from_json(const json& j, ClosingReport& r);
void to_json(json& j, const SweepGrid& g);
void from_json(const json& j, SweepGrid& g);
void to_json(json& j, const UniformGrid& g);
void from_json(const json& j, UniformGrid& g);
void to_json(json& j, const DatumSpec& d);
void from_json(const json& j, DatumSpec& d);
void to_json(json& j, const EnergyReport& r);  // phi omitted
void from_json(const json& j, EnergyReport& r);
void to_json(json& j, const RegularityReport& r);
void to_json(json& j, const SimOutcome& o);  // trajectory summarized by step count
void to_json(json& j, const LyapunovCheck& c);
void to_json(json& j, const ComparisonReport& r);
void to_json(json& j, const NeutralityReport& r);
void to_json(json& j, const AnomalousReport& r);
void from_json(const json& j, AnomalousReport& r);
void to_json(json& j, const NonexistenceReport& r);
void from_json(const json& j, NonexistenceReport& r);
void to_json(json& j, const LabelBlowUp& b);

namespace csv {

/// Shortest decimal text that round-trips to the same double.
std::string num(double value);

std::string curve(const ThresholdCurve& curve);                                  // s,g
std::string trajectory(const ode::Trajectory& traj, std::size_t dense_samples = 0);  // t,w,s
std::string fluid_state(const FluidState& state);  // alpha,x,rho,u,Gamma,E
std::string potential(const UniformGrid& grid, const std::vector<double>& rho,
                      const std::vector<double>& phi);  // x,rho,phi

}  // namespace csv

}  // namespace epct
