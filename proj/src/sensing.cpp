#include "cardio/sensing.hpp"

#include <cmath>

namespace cardio {

const SensingCoefficients&
CoefficientSchedule::coefficients_at(double t_ms) const {
    // Entries are validated (non-empty, first at 0, strictly increasing),
    // so the last entry not after t always exists.
    size_t pick = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].start_ms <= t_ms)
            pick = i;
        else
            break;
    }
    return entries[pick].coefficients;
}

double compose_aegm(const PotentialsFrame& frame, double v_vpa,
                    const SensingCoefficients& k) {
    return k.a * (frame.v_adt - k.b * frame.v_adr + k.c_va * v_vpa);
}

double compose_vegm(const PotentialsFrame& frame, double v_apa,
                    const SensingCoefficients& k) {
    return k.d * (frame.v_vdt - k.b * frame.v_vdr
                  + k.e * (frame.v_vrt - k.b * frame.v_vrr)
                  + k.c_av * v_apa);
}

ThresholdResult threshold_detect(double egm_mv, double threshold_mv,
                                 bool prev_above) {
    ThresholdResult r;
    r.raw = std::fabs(egm_mv) >= threshold_mv;
    r.rising = r.raw && !prev_above;
    return r;
}

} // namespace cardio
