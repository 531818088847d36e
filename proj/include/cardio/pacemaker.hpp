#pragma once

#include <optional>
#include <vector>

namespace cardio {

// ---------------------------------------------------------------------------
// Dual-chamber pace/sense device (DDD): senses and paces both chambers,
// tracks atrial activity through the AV interval, and inhibits on intrinsic
// beats. Sensing is a rectified comparator per channel: a sense fires on the
// first above-threshold sample outside the channel's own blanking, and the
// blanking restarts on every fire. A signal that stays above threshold
// longer than the blanking therefore fires again - that re-trigger is the
// double-counting mechanism, so the blanking lengths are part of the
// behavioural contract, not just noise hygiene.
// ---------------------------------------------------------------------------

struct DeviceParams {
    double lri_ms = 1000.0;   // lower rate interval (V event to V pace)
    double avi_ms = 150.0;    // AV interval (atrial event to V pace)
    double vrp_ms = 320.0;    // ventricular refractory after a V event
    double pvarp_ms = 250.0;  // atrial refractory after a V event
    double pavb_ms = 44.0;    // V-channel blanking after an atrial pace
    double post_vp_atrial_blanking_ms = 150.0;
    // Same-chamber comparator re-arm times (see note above).
    double atrial_sense_blanking_ms = 100.0;
    double ventricular_sense_blanking_ms = 150.0;
    double pulse_width_ms = 0.4;
    double pulse_amplitude_v = 2.5;
};

enum class DeviceEventKind { AS, AR, VS, VR, AP, VP };

struct DeviceEvent {
    DeviceEventKind kind = DeviceEventKind::AS;
    double t_ms = 0.0;
};

enum class PacedChamber { Atrium, Ventricle };

struct PaceRequest {
    PacedChamber chamber = PacedChamber::Atrium;
    double start_ms = 0.0;
    double width_ms = 0.0;
    double amplitude_v = 0.0;
};

struct DeviceState {
    double last_v_event_ms = 0.0;          // VS or VP; escape timing base
    std::optional<double> avi_deadline_ms; // pending V pace when set
    bool atrial_escape_armed = true;
    // Refractory/blanking window ends (absolute times).
    double vrp_until_ms = 0.0;
    double pvarp_until_ms = 0.0;
    double pavb_until_ms = 0.0;
    double post_vp_atrial_until_ms = 0.0;
    double atrial_blank_until_ms = 0.0;
    double ventricular_blank_until_ms = 0.0;
};

struct DeviceStepResult {
    std::vector<DeviceEvent> events;
    std::vector<PaceRequest> pulses;
};

// One device decision per simulation step, fed the rectified comparator
// levels of both channels. Order inside a step: atrial sense, ventricular
// sense (senses may cancel a pending pace), AV-interval expiry, atrial
// escape expiry.
DeviceStepResult device_step(DeviceState& state, const DeviceParams& params,
                             bool as_raw, bool vs_raw, double now_ms);

} // namespace cardio
