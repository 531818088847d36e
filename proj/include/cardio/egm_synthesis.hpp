#pragma once

#include <vector>

#include "cardio/heart_network.hpp"
#include "cardio/vec2.hpp"

namespace cardio {

// ---------------------------------------------------------------------------
// Intracardiac electrogram synthesis. Each travelling activation front is
// modelled as a moving current dipole; an electrode at distance r and angle
// phi from the dipole axis sees moment * cos(phi) / r^2 millivolts. Close
// passes are clamped at r_min so a front brushing an electrode stays finite.
// ---------------------------------------------------------------------------

// Fixed sensing vector: bipolar pair in the atrium, bipolar pair in the
// ventricle. Tip/ring spacing is validated at scenario load (2..15 mm).
struct ElectrodeSet {
    Vec2 atrial_tip;        // adt
    Vec2 atrial_ring;       // adr
    Vec2 ventricular_tip;   // vdt
    Vec2 ventricular_ring;  // vdr
};

struct DipolePose {
    Vec2 point;      // current front position, mm
    Vec2 direction;  // unit vector of travel
};

// Position of a front launched at `origin` toward `dest` after `elapsed_ms`
// at `velocity` mm/ms. Travel past the far end is clamped there; the caller
// retires trackers on arrival so the clamp only covers the arrival step.
DipolePose dipole_position(Vec2 origin, Vec2 dest, double velocity_mm_per_ms,
                           double elapsed_ms);

// Potential at `electrode` from a dipole at `pose`. `polarity` is +1 for
// depolarisation and -1 for the recovery wave. Exactly at the dipole the
// field direction is undefined and the contribution is taken as zero.
double dipole_potential(const DipolePose& pose, double moment, double polarity,
                        Vec2 electrode, double r_min_mm);

// One front being rendered. Geometry is resolved at spawn time so the
// tracker no longer depends on the network tables.
struct DipoleTracker {
    int path = -1;
    PathEnd origin_end = PathEnd::A;
    Vec2 origin;
    Vec2 dest;
    double start_ms = 0.0;
    double velocity_mm_per_ms = 0.0;
    double moment = 0.0;      // mV*mm^2
    double polarity = 1.0;
};

// Mirror of the conduction path's mode, driving tracker lifetime. One
// instance renders the depolarisation lane of a path; a second instance
// renders its recovery lane.
enum class EgmMode { Idle, FromA, FromB, Both };

struct EgmAutomaton {
    int path = -1;
    EgmMode mode = EgmMode::Idle;
    std::vector<DipoleTracker> trackers;  // at most two

    // Consumes a launch/relay/annihilation event. `velocity` and `moment`
    // describe the front a launch event spawns (ignored otherwise).
    // Events with no transition from the current mode throw SimulationFault:
    // they can only come from a de-synchronised driver.
    void apply(ConductionEventKind kind, double t_ms, Vec2 end_a, Vec2 end_b,
               double velocity, double moment, double polarity);
};

// Raw electrode potentials for one instant. Depolarisation trackers feed
// the four sensing channels; recovery trackers feed the two dedicated
// recovery channels evaluated at the ventricular pair.
struct PotentialsFrame {
    double v_adt = 0.0;
    double v_adr = 0.0;
    double v_vdt = 0.0;
    double v_vdr = 0.0;
    double v_vrt = 0.0;
    double v_vrr = 0.0;
};

PotentialsFrame superpose_potentials(const std::vector<const EgmAutomaton*>& depol,
                                     const std::vector<const EgmAutomaton*>& repol,
                                     const ElectrodeSet& electrodes,
                                     double now_ms, double r_min_mm);

} // namespace cardio
