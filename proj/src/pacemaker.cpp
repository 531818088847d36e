#include "cardio/pacemaker.hpp"

namespace cardio {

namespace {
constexpr double kTimeEps = 1e-9;

bool inside(double now, double until) { return now < until - kTimeEps; }
} // namespace

DeviceStepResult device_step(DeviceState& s, const DeviceParams& p,
                             bool as_raw, bool vs_raw, double now) {
    DeviceStepResult out;

    // --- atrial channel -----------------------------------------------------
    if (as_raw && !inside(now, s.atrial_blank_until_ms)) {
        s.atrial_blank_until_ms = now + p.atrial_sense_blanking_ms;
        if (inside(now, s.pvarp_until_ms)
            || inside(now, s.post_vp_atrial_until_ms)) {
            // Refractory sense: annotated but ignored for timing.
            out.events.push_back({DeviceEventKind::AR, now});
        } else {
            out.events.push_back({DeviceEventKind::AS, now});
            s.avi_deadline_ms = now + p.avi_ms;
            s.atrial_escape_armed = false;
        }
    }

    // --- ventricular channel -------------------------------------------------
    if (vs_raw && !inside(now, s.ventricular_blank_until_ms)) {
        s.ventricular_blank_until_ms = now + p.ventricular_sense_blanking_ms;
        if (inside(now, s.vrp_until_ms) || inside(now, s.pavb_until_ms)) {
            out.events.push_back({DeviceEventKind::VR, now});
        } else {
            out.events.push_back({DeviceEventKind::VS, now});
            s.last_v_event_ms = now;
            s.vrp_until_ms = now + p.vrp_ms;
            s.pvarp_until_ms = now + p.pvarp_ms;
            s.avi_deadline_ms.reset();   // intrinsic beat inhibits the pace
            s.atrial_escape_armed = true;
        }
    }

    // --- AV interval expiry -> ventricular pace ------------------------------
    if (s.avi_deadline_ms && now >= *s.avi_deadline_ms - kTimeEps) {
        s.avi_deadline_ms.reset();
        out.events.push_back({DeviceEventKind::VP, now});
        out.pulses.push_back({PacedChamber::Ventricle, now, p.pulse_width_ms,
                              p.pulse_amplitude_v});
        s.last_v_event_ms = now;
        s.vrp_until_ms = now + p.vrp_ms;
        s.pvarp_until_ms = now + p.pvarp_ms;
        s.post_vp_atrial_until_ms = now + p.post_vp_atrial_blanking_ms;
        s.ventricular_blank_until_ms = now + p.ventricular_sense_blanking_ms;
        s.atrial_escape_armed = true;
    }
    // --- atrial escape -> atrial pace ----------------------------------------
    // lri - avi after the last ventricular event, unless an atrial sense
    // (or pace) already started an AV interval.
    else if (s.atrial_escape_armed
             && now >= s.last_v_event_ms + (p.lri_ms - p.avi_ms) - kTimeEps) {
        s.atrial_escape_armed = false;
        out.events.push_back({DeviceEventKind::AP, now});
        out.pulses.push_back({PacedChamber::Atrium, now, p.pulse_width_ms,
                              p.pulse_amplitude_v});
        s.avi_deadline_ms = now + p.avi_ms;
        s.pavb_until_ms = now + p.pavb_ms;
        s.atrial_blank_until_ms = now + p.atrial_sense_blanking_ms;
    }

    return out;
}

} // namespace cardio
