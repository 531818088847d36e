#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cardio/vec2.hpp"

namespace cardio {

// ---------------------------------------------------------------------------
// Abstract conduction network: point nodes joined by straight conduction
// paths on a 2D tissue sheet. Nodes carry local timing state (refractory
// period, optional self-pacing cycle); paths carry travelling activation
// fronts at a fixed conduction velocity. Everything advances on a shared
// fixed step so the whole simulation stays bit-reproducible.
// ---------------------------------------------------------------------------

enum class NodeChamber { Atrial, Ventricular, Conduction };
enum class PathChamber { Atrial, Ventricular, Junctional };

struct NodeSpec {
    std::string id;
    Vec2 position;                           // mm
    std::optional<double> intrinsic_cycle_ms; // absent = not self-pacing
    double erp_ms = 250.0;                   // effective refractory period
    double apd_ms = 250.0;                   // activation-to-recovery delay
    NodeChamber chamber = NodeChamber::Atrial;
};

struct PathSpec {
    std::string id;
    int node_a = -1;                         // index into the node table
    int node_b = -1;
    double velocity_mm_per_ms = 0.6;
    PathChamber chamber = PathChamber::Atrial;
};

enum class NodePhase { Rest, Refractory };

struct NodeState {
    NodePhase phase = NodePhase::Rest;
    double time_in_phase_ms = 0.0;
    std::optional<double> last_activation_ms;
};

// A path conducts at most one front per end. Two simultaneous fronts
// (one from each end) close on each other and annihilate. Conflict is
// reserved for same-end collisions; the step logic never produces it
// because a relay never re-enters the path it arrived on.
enum class PathMode { Idle, Antegrade, Retrograde, Double, Conflict };

struct PathState {
    PathMode mode = PathMode::Idle;
    double clock_a_ms = 0.0;    // runs while the front launched at end A lives
    double clock_b_ms = 0.0;
    double velocity_a = 0.0;    // velocity captured when the front launched;
    double velocity_b = 0.0;    // later overrides must not bend it mid-flight
};

enum class PathEnd { A, B };

// Events on the depolarisation lane and their repolarisation twins.
// CellI/CellJ: front launched at end A / end B. CellIJ: second front joins
// while the opposite one is running. Relay: front reached the far end.
// Anni: opposing fronts met and cancelled.
enum class ConductionEventKind {
    CellI, CellJ, CellIJ, Relay, Anni,
    CellIr, CellJr, CellIJr, RelayR, AnniR,
};

inline bool is_repolarization(ConductionEventKind k) {
    return k >= ConductionEventKind::CellIr;
}

struct ConductionEvent {
    ConductionEventKind kind = ConductionEventKind::CellI;
    int path = -1;
    double t_ms = 0.0;
    // Origin end for Cell events, destination end for Relay; meaningless
    // for Anni (the fronts die between the ends).
    PathEnd end = PathEnd::A;
};

enum class ActivationCause { Intrinsic, Paced, Relay };

struct ActivationRecord {
    int node = -1;
    double t_ms = 0.0;
    ActivationCause cause = ActivationCause::Intrinsic;
    bool captured = false;   // false when the node was refractory
};

// --- node automaton ---------------------------------------------------------

// Advances refractory recovery by dt and fires the intrinsic pacemaker when
// due. A node that has never fired starts its first intrinsic beat
// immediately so a run opens on a beat instead of dead air.
// Returns true when the node self-activates this step.
bool step_node(NodeState& state, const NodeSpec& spec, double now, double dt);

// Attempt to activate (intrinsic, relay or pacing stimulus all use this).
// Refractory nodes swallow the attempt.
bool try_activate_node(NodeState& state, const NodeSpec& spec, double now);

// --- path automaton ---------------------------------------------------------

struct PathStepOutcome {
    bool relay = false;
    PathEnd relay_end = PathEnd::A;  // end the front arrived at
    bool annihilation = false;
};

// Advances running front clocks by dt and reports arrival/annihilation.
// On relay or annihilation the path returns to Idle with clocks cleared.
PathStepOutcome step_path(PathState& state, double path_length_mm, double dt);

// Launch a front at `from` unless that end is already occupied. Returns the
// event kind actually emitted (CellI/CellJ/CellIJ) or nullopt when the
// launch is swallowed (same-end refire or already Double).
std::optional<ConductionEventKind>
launch_front(PathState& state, PathEnd from, double velocity_mm_per_ms);

// --- network orchestrator ----------------------------------------------------

struct HeartStepResult {
    std::vector<ConductionEvent> events;
    std::vector<ActivationRecord> activations;
};

class HeartNetwork {
public:
    HeartNetwork(std::vector<NodeSpec> nodes, std::vector<PathSpec> paths);

    // One fixed step at absolute time `now`. `paced_nodes` are pacing
    // stimuli issued by the device in the previous step. The step order is:
    // running fronts advance (relays activate their destination node within
    // the same step, which may launch new fronts), then pacing stimuli,
    // then intrinsic beats, then due repolarisation launches.
    HeartStepResult step(double now, double dt,
                         const std::vector<int>& paced_nodes);

    void set_path_velocity(int path, double velocity_mm_per_ms);

    const std::vector<NodeSpec>& nodes() const { return nodes_; }
    const std::vector<PathSpec>& paths() const { return paths_; }
    const NodeState& node_state(int i) const { return node_states_[i]; }
    const PathState& path_state(int i) const { return path_states_[i]; }
    const PathState& repol_state(int i) const { return repol_states_[i]; }
    double path_length(int i) const { return path_lengths_[i]; }
    int node_index(const std::string& id) const;  // -1 when unknown
    int path_index(const std::string& id) const;

private:
    struct PendingRepol {
        int path;
        PathEnd end;
        double due_ms;
        double velocity;
    };

    void activate(int node, double now, ActivationCause cause, int via_path,
                  HeartStepResult& out);

    std::vector<NodeSpec> nodes_;
    std::vector<PathSpec> paths_;
    std::vector<double> path_lengths_;
    std::vector<NodeState> node_states_;
    std::vector<PathState> path_states_;   // depolarisation lane
    std::vector<PathState> repol_states_;  // repolarisation lane (ventricular)
    std::vector<std::vector<int>> incident_;  // node -> path indices
    std::vector<PendingRepol> repol_queue_;
};

} // namespace cardio
