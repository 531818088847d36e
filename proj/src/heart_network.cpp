#include "cardio/heart_network.hpp"

#include <cassert>
#include <stdexcept>

namespace cardio {

namespace {
// Slack for comparing accumulated step times against durations expressed
// in ms. Keeps behaviour stable when dt does not divide a window exactly.
constexpr double kTimeEps = 1e-9;
} // namespace

// --- node automaton ---------------------------------------------------------

bool try_activate_node(NodeState& state, const NodeSpec&, double now) {
    if (state.phase != NodePhase::Rest)
        return false;
    state.phase = NodePhase::Refractory;
    state.time_in_phase_ms = 0.0;
    state.last_activation_ms = now;
    return true;
}

bool step_node(NodeState& state, const NodeSpec& spec, double now, double dt) {
    state.time_in_phase_ms += dt;
    if (state.phase == NodePhase::Refractory
        && state.time_in_phase_ms >= spec.erp_ms - kTimeEps) {
        state.phase = NodePhase::Rest;
        state.time_in_phase_ms = 0.0;
    }
    if (!spec.intrinsic_cycle_ms || state.phase != NodePhase::Rest)
        return false;
    if (!state.last_activation_ms)
        return true;  // first beat fires as soon as the node is stepped
    return now - *state.last_activation_ms >= *spec.intrinsic_cycle_ms - kTimeEps;
}

// --- path automaton ---------------------------------------------------------

PathStepOutcome step_path(PathState& state, double path_length_mm, double dt) {
    PathStepOutcome out;
    switch (state.mode) {
    case PathMode::Idle:
    case PathMode::Conflict:
        return out;
    case PathMode::Antegrade: {
        state.clock_a_ms += dt;
        if (state.velocity_a * state.clock_a_ms >= path_length_mm - kTimeEps) {
            out.relay = true;
            out.relay_end = PathEnd::B;
            state = PathState{};
        }
        return out;
    }
    case PathMode::Retrograde: {
        state.clock_b_ms += dt;
        if (state.velocity_b * state.clock_b_ms >= path_length_mm - kTimeEps) {
            out.relay = true;
            out.relay_end = PathEnd::A;
            state = PathState{};
        }
        return out;
    }
    case PathMode::Double: {
        state.clock_a_ms += dt;
        state.clock_b_ms += dt;
        const double covered = state.velocity_a * state.clock_a_ms
                             + state.velocity_b * state.clock_b_ms;
        if (covered >= path_length_mm - kTimeEps) {
            // Opposing fronts meet somewhere between the ends; both die.
            // No relay is ever emitted from a Double path.
            out.annihilation = true;
            state = PathState{};
        }
        return out;
    }
    }
    return out;
}

std::optional<ConductionEventKind>
launch_front(PathState& state, PathEnd from, double velocity_mm_per_ms) {
    switch (state.mode) {
    case PathMode::Idle:
        if (from == PathEnd::A) {
            state.mode = PathMode::Antegrade;
            state.clock_a_ms = 0.0;
            state.velocity_a = velocity_mm_per_ms;
            return ConductionEventKind::CellI;
        }
        state.mode = PathMode::Retrograde;
        state.clock_b_ms = 0.0;
        state.velocity_b = velocity_mm_per_ms;
        return ConductionEventKind::CellJ;
    case PathMode::Antegrade:
        if (from == PathEnd::A)
            return std::nullopt;  // same-end refire: the wake is refractory
        state.mode = PathMode::Double;
        state.clock_b_ms = 0.0;
        state.velocity_b = velocity_mm_per_ms;
        return ConductionEventKind::CellIJ;
    case PathMode::Retrograde:
        if (from == PathEnd::B)
            return std::nullopt;
        state.mode = PathMode::Double;
        state.clock_a_ms = 0.0;
        state.velocity_a = velocity_mm_per_ms;
        return ConductionEventKind::CellIJ;
    case PathMode::Double:
    case PathMode::Conflict:
        return std::nullopt;
    }
    return std::nullopt;
}

// --- network orchestrator ----------------------------------------------------

HeartNetwork::HeartNetwork(std::vector<NodeSpec> nodes,
                           std::vector<PathSpec> paths)
    : nodes_(std::move(nodes)), paths_(std::move(paths)) {
    node_states_.resize(nodes_.size());
    path_states_.resize(paths_.size());
    repol_states_.resize(paths_.size());
    incident_.resize(nodes_.size());
    path_lengths_.reserve(paths_.size());
    for (size_t i = 0; i < paths_.size(); ++i) {
        const PathSpec& p = paths_[i];
        if (p.node_a < 0 || p.node_a >= static_cast<int>(nodes_.size())
            || p.node_b < 0 || p.node_b >= static_cast<int>(nodes_.size())
            || p.node_a == p.node_b)
            throw std::invalid_argument("path '" + p.id
                                        + "' has bad endpoints");
        const double len =
            length(nodes_[p.node_b].position - nodes_[p.node_a].position);
        if (len <= 0.0)
            throw std::invalid_argument("path '" + p.id
                                        + "' has zero length");
        path_lengths_.push_back(len);
        incident_[p.node_a].push_back(static_cast<int>(i));
        incident_[p.node_b].push_back(static_cast<int>(i));
    }
}

int HeartNetwork::node_index(const std::string& id) const {
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return static_cast<int>(i);
    return -1;
}

int HeartNetwork::path_index(const std::string& id) const {
    for (size_t i = 0; i < paths_.size(); ++i)
        if (paths_[i].id == id) return static_cast<int>(i);
    return -1;
}

void HeartNetwork::set_path_velocity(int path, double velocity_mm_per_ms) {
    paths_[path].velocity_mm_per_ms = velocity_mm_per_ms;
}

void HeartNetwork::activate(int node, double now, ActivationCause cause,
                            int via_path, HeartStepResult& out) {
    const bool captured = try_activate_node(node_states_[node], nodes_[node], now);
    out.activations.push_back({node, now, cause, captured});
    if (!captured)
        return;
    for (int p : incident_[node]) {
        // The path that delivered this activation stays idle: the tissue
        // just behind the arriving front cannot be re-entered.
        if (p == via_path)
            continue;
        const PathEnd from =
            paths_[p].node_a == node ? PathEnd::A : PathEnd::B;
        const double vel = paths_[p].velocity_mm_per_ms;
        const auto kind = launch_front(path_states_[p], from, vel);
        if (!kind)
            continue;
        out.events.push_back({*kind, p, now, from});
        // Every ventricular depolarisation front is mirrored by a recovery
        // front through the same geometry one activation-recovery delay
        // later. Atrial recovery is too small to sense and is skipped.
        if (paths_[p].chamber == PathChamber::Ventricular)
            repol_queue_.push_back({p, from, now + nodes_[node].apd_ms, vel});
    }
}

HeartStepResult HeartNetwork::step(double now, double dt,
                                   const std::vector<int>& paced_nodes) {
    HeartStepResult out;

    // 1. Fronts that were already running move first; a front launched in
    //    this step starts at its origin and moves from the next step on.
    std::vector<std::pair<int, PathEnd>> arrivals;
    for (size_t i = 0; i < paths_.size(); ++i) {
        const auto o = step_path(path_states_[i], path_lengths_[i], dt);
        if (o.annihilation)
            out.events.push_back({ConductionEventKind::Anni,
                                  static_cast<int>(i), now, PathEnd::A});
        if (o.relay) {
            out.events.push_back({ConductionEventKind::Relay,
                                  static_cast<int>(i), now, o.relay_end});
            arrivals.emplace_back(static_cast<int>(i), o.relay_end);
        }
    }
    for (size_t i = 0; i < paths_.size(); ++i) {
        const auto o = step_path(repol_states_[i], path_lengths_[i], dt);
        if (o.annihilation)
            out.events.push_back({ConductionEventKind::AnniR,
                                  static_cast<int>(i), now, PathEnd::A});
        if (o.relay)  // recovery fronts do not activate nodes
            out.events.push_back({ConductionEventKind::RelayR,
                                  static_cast<int>(i), now, o.relay_end});
    }
    for (const auto& [path, end] : arrivals) {
        const int dest = end == PathEnd::A ? paths_[path].node_a
                                           : paths_[path].node_b;
        activate(dest, now, ActivationCause::Relay, path, out);
    }

    // 2. Device pacing stimuli issued last step.
    for (int n : paced_nodes)
        activate(n, now, ActivationCause::Paced, -1, out);

    // 3. Intrinsic beats.
    for (size_t n = 0; n < nodes_.size(); ++n)
        if (step_node(node_states_[n], nodes_[n], now, dt))
            activate(static_cast<int>(n), now, ActivationCause::Intrinsic,
                     -1, out);

    // 4. Recovery fronts that have come due.
    for (size_t q = 0; q < repol_queue_.size();) {
        const PendingRepol& r = repol_queue_[q];
        if (r.due_ms <= now + kTimeEps) {
            const auto kind =
                launch_front(repol_states_[r.path], r.end, r.velocity);
            if (kind) {
                ConductionEventKind rk = ConductionEventKind::CellIr;
                if (*kind == ConductionEventKind::CellJ)
                    rk = ConductionEventKind::CellJr;
                else if (*kind == ConductionEventKind::CellIJ)
                    rk = ConductionEventKind::CellIJr;
                out.events.push_back({rk, r.path, now, r.end});
            }
            repol_queue_.erase(repol_queue_.begin() + q);
        } else {
            ++q;
        }
    }
    return out;
}

} // namespace cardio
