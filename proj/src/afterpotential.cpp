#include "cardio/afterpotential.hpp"

#include <cmath>

namespace cardio {

bool on_stim_edge(AfterpotentialState& state, StimEdge edge, double v_s_mv) {
    switch (edge) {
    case StimEdge::PulseStart:
        if (state.phase == AfterpotentialPhase::Decaying) {
            state.phase = AfterpotentialPhase::Idle;
            state.t_ms = 0.0;
            state.v_s_mv = 0.0;
        }
        return false;
    case StimEdge::PulseEnd: {
        const bool overlapped = state.phase == AfterpotentialPhase::Decaying;
        state.phase = AfterpotentialPhase::Decaying;
        state.t_ms = 0.0;
        state.v_s_mv = v_s_mv;
        return overlapped;
    }
    }
    return false;
}

double afterpotential_value(const AfterpotentialState& state) {
    if (state.phase != AfterpotentialPhase::Decaying)
        return 0.0;
    return state.v_s_mv * std::exp(-state.t_ms / state.tau_ms);
}

} // namespace cardio
