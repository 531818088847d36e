#pragma once

namespace cardio {

// ---------------------------------------------------------------------------
// Pacing afterpotential: the residual polarisation a pacing pulse leaves on
// the electrode-tissue interface. While the pulse itself is blanked, the
// tail V_S * exp(-t/tau) that follows the pulse end is what the opposite
// chamber's sense amplifier can pick up (crosstalk).
// ---------------------------------------------------------------------------

enum class AfterpotentialPhase { Idle, Decaying };

struct AfterpotentialState {
    AfterpotentialPhase phase = AfterpotentialPhase::Idle;
    double t_ms = 0.0;     // time since the pulse ended
    double v_s_mv = 0.0;   // initial tail amplitude, normally negative
    double tau_ms = 20.0;  // RC time constant of the interface
};

enum class StimEdge { PulseStart, PulseEnd };

// Tail amplitude left by a pulse of `amplitude_v` volts and `width_ms`
// milliseconds; k is the coupling constant in mV per V*ms. The sign is
// negative: the tail opposes the pulse.
inline double stim_tail_amplitude(double k_mv_per_v_ms, double amplitude_v,
                                  double width_ms) {
    return -k_mv_per_v_ms * amplitude_v * width_ms;
}

// Pulse-edge transitions:
//   Idle + PulseEnd    -> decay starts at full tail amplitude
//   Decaying + PulseStart -> back to Idle (a new pulse clamps the tail)
//   Idle + PulseStart  -> nothing; the decay begins only at the pulse end
//   Decaying + PulseEnd -> decay restarts; returns true so the caller can
//                          log the overlapping-pulse warning
bool on_stim_edge(AfterpotentialState& state, StimEdge edge, double v_s_mv);

inline void advance_afterpotential(AfterpotentialState& state, double dt_ms) {
    if (state.phase == AfterpotentialPhase::Decaying)
        state.t_ms += dt_ms;
}

double afterpotential_value(const AfterpotentialState& state);

} // namespace cardio
