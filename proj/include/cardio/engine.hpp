#pragma once

#include <map>
#include <string>
#include <vector>

#include "cardio/afterpotential.hpp"
#include "cardio/egm_synthesis.hpp"
#include "cardio/heart_network.hpp"
#include "cardio/pacemaker.hpp"
#include "cardio/scenario.hpp"
#include "cardio/sensing.hpp"

namespace cardio {

// ---------------------------------------------------------------------------
// Closed-loop driver: tissue network -> electrogram synthesis -> channel
// composition -> device -> pacing stimuli back into the tissue, all on one
// fixed step. Every frame of every signal is recorded so a run can be
// replayed, plotted or diffed bit for bit.
// ---------------------------------------------------------------------------

struct TraceFrame {
    double t_ms = 0.0;
    double aegm_mv = 0.0;        // composed atrial channel
    double vegm_mv = 0.0;        // composed ventricular channel
    bool as_raw = false;         // |AEGM| at or above the atrial threshold
    bool vs_raw = false;
    PotentialsFrame potentials;  // raw per-electrode potentials
    double v_apa_mv = 0.0;       // atrial pace afterpotential tail
    double v_vpa_mv = 0.0;       // ventricular pace afterpotential tail
    std::string marker;          // device annotations this frame, '+'-joined
};

struct Trace {
    std::string scenario;
    double dt_ms = 0.0;
    std::vector<TraceFrame> frames;
    std::vector<DeviceEvent> device_events;
    std::vector<ActivationRecord> activations;
    std::vector<ConductionEvent> conduction_events;
    int overlap_warnings = 0;  // pacing pulse landed on a live afterpotential
};

struct RunSummary {
    int as = 0, ar = 0, vs = 0, vr = 0, ap = 0, vp = 0;
    // How many AS a single atrial activation of the atrial lead site earned,
    // histogrammed over activations: {1: n} is clean 1:1 sensing, a bin at 2
    // is double counting, a bin at 0 is undersensing. Likewise VS for the
    // ventricular lead site.
    std::map<int, int> as_per_atrial_activation;
    std::map<int, int> vs_per_ventricular_activation;
};

const char* marker_label(DeviceEventKind kind);

Trace run_simulation(const Scenario& scenario);

RunSummary summarize_events(const Trace& trace, const Scenario& scenario);

} // namespace cardio
