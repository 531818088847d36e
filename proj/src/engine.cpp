#include "cardio/engine.hpp"

#include <algorithm>
#include <cmath>

#include "cardio/faults.hpp"

namespace cardio {

namespace {

constexpr double kTimeEps = 1e-9;

// A pacing pulse edge waiting to hit an afterpotential automaton.
struct PendingEdge {
    StimEdge edge = StimEdge::PulseStart;
    double due_ms = 0.0;
    double v_s_mv = 0.0;
};

bool modes_match(PathMode p, EgmMode e) {
    switch (p) {
    case PathMode::Idle:       return e == EgmMode::Idle;
    case PathMode::Antegrade:  return e == EgmMode::FromA;
    case PathMode::Retrograde: return e == EgmMode::FromB;
    case PathMode::Double:     return e == EgmMode::Both;
    case PathMode::Conflict:   return false;
    }
    return false;
}

} // namespace

const char* marker_label(DeviceEventKind kind) {
    switch (kind) {
    case DeviceEventKind::AS: return "AS";
    case DeviceEventKind::AR: return "AR";
    case DeviceEventKind::VS: return "VS";
    case DeviceEventKind::VR: return "VR";
    case DeviceEventKind::AP: return "AP";
    case DeviceEventKind::VP: return "VP";
    }
    return "?";
}

Trace run_simulation(const Scenario& sc) {
    Trace trace;
    trace.scenario = sc.name;
    trace.dt_ms = sc.run.dt_ms;

    HeartNetwork heart(sc.nodes, sc.paths);
    const size_t n_paths = sc.paths.size();

    std::vector<EgmAutomaton> depol(n_paths), repol(n_paths);
    std::vector<const EgmAutomaton*> depol_ptrs, repol_ptrs;
    for (size_t i = 0; i < n_paths; ++i) {
        depol[i].path = static_cast<int>(i);
        repol[i].path = static_cast<int>(i);
        depol_ptrs.push_back(&depol[i]);
        repol_ptrs.push_back(&repol[i]);
    }

    AfterpotentialState tail_a, tail_v;  // atrial / ventricular pace tails
    tail_a.tau_ms = sc.afterpotential.tau_ms;
    tail_v.tau_ms = sc.afterpotential.tau_ms;
    std::vector<PendingEdge> edges_a, edges_v;

    DeviceState device;
    std::vector<int> paced_now;   // stimuli delivered to the tissue this step
    std::vector<int> paced_next;
    bool prev_above_a = false, prev_above_v = false;
    std::vector<bool> override_done(sc.overrides.size(), false);

    const double dt = sc.run.dt_ms;
    const long n_frames = std::lround(sc.run.duration_ms / dt);
    trace.frames.reserve(static_cast<size_t>(n_frames));

    for (long k = 0; k < n_frames; ++k) {
        const double now = static_cast<double>(k) * dt;

        for (size_t i = 0; i < sc.overrides.size(); ++i) {
            if (!override_done[i] && sc.overrides[i].start_ms <= now + kTimeEps) {
                heart.set_path_velocity(sc.overrides[i].path,
                                        sc.overrides[i].velocity_mm_per_ms);
                override_done[i] = true;
            }
        }

        paced_now.swap(paced_next);
        paced_next.clear();
        HeartStepResult hs = heart.step(now, dt, paced_now);
        trace.activations.insert(trace.activations.end(),
                                 hs.activations.begin(), hs.activations.end());
        trace.conduction_events.insert(trace.conduction_events.end(),
                                       hs.events.begin(), hs.events.end());

        for (const ConductionEvent& ev : hs.events) {
            const bool rep = is_repolarization(ev.kind);
            const PathState& ps =
                rep ? heart.repol_state(ev.path) : heart.path_state(ev.path);
            const double velocity =
                ev.end == PathEnd::A ? ps.velocity_a : ps.velocity_b;
            const double moment =
                rep ? sc.egm.moment_repol
                    : moment_for_chamber(sc.egm, sc.paths[ev.path].chamber);
            EgmAutomaton& autom = rep ? repol[ev.path] : depol[ev.path];
            autom.apply(ev.kind, ev.t_ms,
                        sc.nodes[sc.paths[ev.path].node_a].position,
                        sc.nodes[sc.paths[ev.path].node_b].position,
                        velocity, moment, rep ? -1.0 : 1.0);
        }
        for (size_t i = 0; i < n_paths; ++i) {
            if (!modes_match(heart.path_state(static_cast<int>(i)).mode,
                             depol[i].mode)
                || !modes_match(heart.repol_state(static_cast<int>(i)).mode,
                                repol[i].mode))
                throw SimulationFault("electrogram automaton for path '"
                                      + sc.paths[i].id
                                      + "' lost sync with the conduction path");
        }

        advance_afterpotential(tail_a, dt);
        advance_afterpotential(tail_v, dt);
        auto pump_edges = [&](std::vector<PendingEdge>& edges,
                              AfterpotentialState& tail) {
            for (size_t i = 0; i < edges.size();) {
                if (edges[i].due_ms <= now + kTimeEps) {
                    if (on_stim_edge(tail, edges[i].edge, edges[i].v_s_mv))
                        ++trace.overlap_warnings;
                    edges.erase(edges.begin() + i);
                } else {
                    ++i;
                }
            }
        };
        pump_edges(edges_a, tail_a);
        pump_edges(edges_v, tail_v);

        TraceFrame frame;
        frame.t_ms = now;
        frame.potentials = superpose_potentials(depol_ptrs, repol_ptrs,
                                                sc.electrodes, now,
                                                sc.egm.r_min_mm);
        frame.v_apa_mv = afterpotential_value(tail_a);
        frame.v_vpa_mv = afterpotential_value(tail_v);

        const SensingCoefficients& co = sc.sensing.schedule.coefficients_at(now);
        frame.aegm_mv = compose_aegm(frame.potentials, frame.v_vpa_mv, co);
        frame.vegm_mv = compose_vegm(frame.potentials, frame.v_apa_mv, co);

        const ThresholdResult ra = threshold_detect(
            frame.aegm_mv, sc.sensing.atrial_threshold_mv, prev_above_a);
        const ThresholdResult rv = threshold_detect(
            frame.vegm_mv, sc.sensing.ventricular_threshold_mv, prev_above_v);
        prev_above_a = ra.raw;
        prev_above_v = rv.raw;
        frame.as_raw = ra.raw;
        frame.vs_raw = rv.raw;

        const DeviceStepResult ds =
            device_step(device, sc.device, ra.raw, rv.raw, now);
        for (const DeviceEvent& ev : ds.events) {
            trace.device_events.push_back(ev);
            if (!frame.marker.empty())
                frame.marker += '+';
            frame.marker += marker_label(ev.kind);
        }
        for (const PaceRequest& pulse : ds.pulses) {
            const bool atrium = pulse.chamber == PacedChamber::Atrium;
            paced_next.push_back(atrium ? sc.atrial_pace_node
                                        : sc.ventricular_pace_node);
            const double v_s = stim_tail_amplitude(
                sc.afterpotential.k_mv_per_v_ms, pulse.amplitude_v,
                pulse.width_ms);
            auto& edges = atrium ? edges_a : edges_v;
            edges.push_back({StimEdge::PulseStart, pulse.start_ms, v_s});
            edges.push_back(
                {StimEdge::PulseEnd, pulse.start_ms + pulse.width_ms, v_s});
        }

        trace.frames.push_back(std::move(frame));
    }
    return trace;
}

namespace {

std::map<int, int> senses_per_activation(const Trace& trace, int node,
                                         DeviceEventKind kind) {
    std::vector<double> times;
    for (const ActivationRecord& a : trace.activations)
        if (a.node == node && a.captured)
            times.push_back(a.t_ms);
    std::map<int, int> hist;
    if (times.empty())
        return hist;
    std::vector<int> counts(times.size(), 0);
    for (const DeviceEvent& ev : trace.device_events) {
        if (ev.kind != kind)
            continue;
        const auto it = std::lower_bound(times.begin(), times.end(), ev.t_ms);
        size_t idx;
        if (it == times.begin())
            idx = 0;
        else if (it == times.end())
            idx = times.size() - 1;
        else {
            const size_t hi = static_cast<size_t>(it - times.begin());
            idx = (ev.t_ms - times[hi - 1] <= times[hi] - ev.t_ms) ? hi - 1 : hi;
        }
        ++counts[idx];
    }
    for (int c : counts)
        ++hist[c];
    return hist;
}

} // namespace

RunSummary summarize_events(const Trace& trace, const Scenario& sc) {
    RunSummary s;
    for (const DeviceEvent& ev : trace.device_events) {
        switch (ev.kind) {
        case DeviceEventKind::AS: ++s.as; break;
        case DeviceEventKind::AR: ++s.ar; break;
        case DeviceEventKind::VS: ++s.vs; break;
        case DeviceEventKind::VR: ++s.vr; break;
        case DeviceEventKind::AP: ++s.ap; break;
        case DeviceEventKind::VP: ++s.vp; break;
        }
    }
    s.as_per_atrial_activation = senses_per_activation(
        trace, sc.atrial_pace_node, DeviceEventKind::AS);
    s.vs_per_ventricular_activation = senses_per_activation(
        trace, sc.ventricular_pace_node, DeviceEventKind::VS);
    return s;
}

} // namespace cardio
