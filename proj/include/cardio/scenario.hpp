#pragma once

#include <string>
#include <vector>

#include "cardio/egm_synthesis.hpp"
#include "cardio/heart_network.hpp"
#include "cardio/pacemaker.hpp"
#include "cardio/sensing.hpp"

namespace cardio {

// ---------------------------------------------------------------------------
// A scenario is the complete, self-contained description of one run:
// tissue topology, electrode geometry, synthesis constants, sensing
// configuration, device programming and run length. Text format is
// line-oriented key/value under [section] headers; see the built-in
// scenarios for worked examples.
// ---------------------------------------------------------------------------

struct EgmParams {
    double r_min_mm = 2.0;
    double moment_atrial = 40.0;       // mV*mm^2 per path chamber
    double moment_ventricular = 400.0;
    double moment_junctional = 10.0;
    double moment_repol = 80.0;
};

struct AfterpotentialParams {
    double tau_ms = 20.0;
    double k_mv_per_v_ms = 0.5;  // pulse (V * ms) -> tail amplitude (mV)
};

struct SensingParams {
    double atrial_threshold_mv = 0.5;
    double ventricular_threshold_mv = 2.0;
    CoefficientSchedule schedule;  // defaults to one all-default entry at 0
};

struct VelocityOverride {
    int path = -1;
    double start_ms = 0.0;
    double velocity_mm_per_ms = 0.0;
};

struct RunParams {
    double duration_ms = 0.0;
    double dt_ms = 0.1;
};

struct Scenario {
    std::string name;
    std::vector<NodeSpec> nodes;
    std::vector<PathSpec> paths;
    ElectrodeSet electrodes;
    EgmParams egm;
    AfterpotentialParams afterpotential;
    SensingParams sensing;
    DeviceParams device;
    int atrial_pace_node = -1;       // stimulus targets for AP / VP
    int ventricular_pace_node = -1;
    std::vector<VelocityOverride> overrides;
    RunParams run;
};

// Parses and validates scenario text. Unknown sections, unknown keys and
// malformed values raise ScenarioError with 1-based line/column; semantic
// problems (dangling ids, out-of-range values) raise ScenarioError naming
// the offender.
Scenario load_scenario(const std::string& text, const std::string& name = "");

// Reads `path` and parses it. I/O failures raise std::runtime_error,
// scenario problems raise ScenarioError as above.
Scenario load_scenario_file(const std::string& path);

double moment_for_chamber(const EgmParams& egm, PathChamber chamber);

} // namespace cardio
