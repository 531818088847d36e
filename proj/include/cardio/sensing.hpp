#pragma once

#include <vector>

#include "cardio/egm_synthesis.hpp"

namespace cardio {

// ---------------------------------------------------------------------------
// Sense-channel composition. The raw electrode potentials are mixed into the
// two signals the device actually sees:
//
//   AEGM = a * (V_adt - b*V_adr + c_va*V_vpa)
//   VEGM = d * (V_vdt - b*V_vdr + e*(V_vrt - b*V_vrr) + c_av*V_apa)
//
// b blends bipolar (1) against unipolar tip-only (0) sensing, e scales the
// recovery-wave pickup, and c_va/c_av couple in the opposite chamber's
// pacing afterpotential. With b=1 any signal common to tip and ring cancels
// exactly; dropping b exposes far-field artefacts.
// ---------------------------------------------------------------------------

struct SensingCoefficients {
    double a = 1.0;     // atrial channel gain
    double b = 1.0;     // ring rejection weight, 0..1
    double c_va = 0.0;  // ventricular pace tail coupled into the atrial channel
    double c_av = 0.0;  // atrial pace tail coupled into the ventricular channel
    double d = 1.0;     // ventricular channel gain
    double e = 0.2;     // recovery-wave weight on the ventricular channel
};

struct ScheduleEntry {
    double start_ms = 0.0;
    SensingCoefficients coefficients;
};

// Piecewise-constant coefficient timeline. Entries must start at 0 and be
// strictly increasing; entry k applies on [start_k, start_{k+1}).
struct CoefficientSchedule {
    std::vector<ScheduleEntry> entries;

    const SensingCoefficients& coefficients_at(double t_ms) const;
};

double compose_aegm(const PotentialsFrame& frame, double v_vpa,
                    const SensingCoefficients& k);
double compose_vegm(const PotentialsFrame& frame, double v_apa,
                    const SensingCoefficients& k);

struct ThresholdResult {
    bool raw = false;     // |egm| at or above threshold right now
    bool rising = false;  // raw and the previous sample was below
};

// Rectified comparator: polarity of the deflection is irrelevant.
ThresholdResult threshold_detect(double egm_mv, double threshold_mv,
                                 bool prev_above);

} // namespace cardio
