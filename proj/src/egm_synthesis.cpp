#include "cardio/egm_synthesis.hpp"

#include <algorithm>
#include <string>

#include "cardio/faults.hpp"

namespace cardio {

DipolePose dipole_position(Vec2 origin, Vec2 dest, double velocity_mm_per_ms,
                           double elapsed_ms) {
    const Vec2 span = dest - origin;
    const double len = length(span);
    const Vec2 dir = {span.x / len, span.y / len};
    const double s = std::min(velocity_mm_per_ms * elapsed_ms, len);
    return {origin + s * dir, dir};
}

double dipole_potential(const DipolePose& pose, double moment, double polarity,
                        Vec2 electrode, double r_min_mm) {
    const Vec2 d = electrode - pose.point;
    const double dist = length(d);
    if (dist == 0.0)
        return 0.0;
    const double cos_phi = dot(pose.direction, d) / dist;
    const double r = std::max(dist, r_min_mm);
    return polarity * moment * cos_phi / (r * r);
}

namespace {

const char* mode_name(EgmMode m) {
    switch (m) {
    case EgmMode::Idle:  return "Idle";
    case EgmMode::FromA: return "FromA";
    case EgmMode::FromB: return "FromB";
    case EgmMode::Both:  return "Both";
    }
    return "?";
}

const char* kind_name(ConductionEventKind k) {
    switch (k) {
    case ConductionEventKind::CellI:   case ConductionEventKind::CellIr:  return "launch-A";
    case ConductionEventKind::CellJ:   case ConductionEventKind::CellJr:  return "launch-B";
    case ConductionEventKind::CellIJ:  case ConductionEventKind::CellIJr: return "launch-join";
    case ConductionEventKind::Relay:   case ConductionEventKind::RelayR:  return "relay";
    case ConductionEventKind::Anni:    case ConductionEventKind::AnniR:   return "annihilation";
    }
    return "?";
}

} // namespace

void EgmAutomaton::apply(ConductionEventKind kind, double t_ms, Vec2 end_a,
                         Vec2 end_b, double velocity, double moment,
                         double polarity) {
    // The two lanes share one transition table; fold recovery kinds onto
    // their depolarisation counterparts.
    ConductionEventKind k = kind;
    switch (kind) {
    case ConductionEventKind::CellIr:  k = ConductionEventKind::CellI;  break;
    case ConductionEventKind::CellJr:  k = ConductionEventKind::CellJ;  break;
    case ConductionEventKind::CellIJr: k = ConductionEventKind::CellIJ; break;
    case ConductionEventKind::RelayR:  k = ConductionEventKind::Relay;  break;
    case ConductionEventKind::AnniR:   k = ConductionEventKind::Anni;   break;
    default: break;
    }

    auto spawn = [&](PathEnd from) {
        DipoleTracker t;
        t.path = path;
        t.origin_end = from;
        t.origin = from == PathEnd::A ? end_a : end_b;
        t.dest = from == PathEnd::A ? end_b : end_a;
        t.start_ms = t_ms;
        t.velocity_mm_per_ms = velocity;
        t.moment = moment;
        t.polarity = polarity;
        trackers.push_back(t);
    };

    const EgmMode m = mode;
    if (m == EgmMode::Idle && k == ConductionEventKind::CellI) {
        mode = EgmMode::FromA;
        spawn(PathEnd::A);
        return;
    }
    if (m == EgmMode::Idle && k == ConductionEventKind::CellJ) {
        mode = EgmMode::FromB;
        spawn(PathEnd::B);
        return;
    }
    if ((m == EgmMode::FromA || m == EgmMode::FromB)
        && k == ConductionEventKind::CellIJ) {
        spawn(m == EgmMode::FromA ? PathEnd::B : PathEnd::A);
        mode = EgmMode::Both;
        return;
    }
    if ((m == EgmMode::FromA || m == EgmMode::FromB)
        && k == ConductionEventKind::Relay) {
        mode = EgmMode::Idle;
        trackers.clear();
        return;
    }
    if (m == EgmMode::Both && k == ConductionEventKind::Anni) {
        // Both fronts vanish; the path contributes nothing afterwards.
        mode = EgmMode::Idle;
        trackers.clear();
        return;
    }
    throw SimulationFault("egm automaton for path " + std::to_string(path)
                          + ": event '" + kind_name(k) + "' in state '"
                          + mode_name(m) + "' has no transition");
}

PotentialsFrame superpose_potentials(const std::vector<const EgmAutomaton*>& depol,
                                     const std::vector<const EgmAutomaton*>& repol,
                                     const ElectrodeSet& electrodes,
                                     double now_ms, double r_min_mm) {
    PotentialsFrame f;
    for (const EgmAutomaton* a : depol) {
        for (const DipoleTracker& t : a->trackers) {
            const DipolePose pose = dipole_position(
                t.origin, t.dest, t.velocity_mm_per_ms, now_ms - t.start_ms);
            // Near and far sources are treated alike: every front is seen
            // by every electrode, which is exactly what lets far-field
            // artefacts emerge.
            f.v_adt += dipole_potential(pose, t.moment, t.polarity,
                                        electrodes.atrial_tip, r_min_mm);
            f.v_adr += dipole_potential(pose, t.moment, t.polarity,
                                        electrodes.atrial_ring, r_min_mm);
            f.v_vdt += dipole_potential(pose, t.moment, t.polarity,
                                        electrodes.ventricular_tip, r_min_mm);
            f.v_vdr += dipole_potential(pose, t.moment, t.polarity,
                                        electrodes.ventricular_ring, r_min_mm);
        }
    }
    for (const EgmAutomaton* a : repol) {
        for (const DipoleTracker& t : a->trackers) {
            const DipolePose pose = dipole_position(
                t.origin, t.dest, t.velocity_mm_per_ms, now_ms - t.start_ms);
            f.v_vrt += dipole_potential(pose, t.moment, t.polarity,
                                        electrodes.ventricular_tip, r_min_mm);
            f.v_vrr += dipole_potential(pose, t.moment, t.polarity,
                                        electrodes.ventricular_ring, r_min_mm);
        }
    }
    return f;
}

} // namespace cardio
