#include "cardio/builtin_scenarios.hpp"

#include <array>

namespace cardio {
namespace {

// Canonical two-chamber geometry shared by the built-in scenarios (and by
// `topology = baseline` in user scenario files).  Coordinates are mm on a
// schematic frontal plane: sinus node high in the atrium, a slow junctional
// isthmus between av and his, fast bundle-like paths into both ventricular
// sites.  The sense/pace electrode pairs sit a few millimetres off the mid
// and rv nodes.
const char kTopology[] = R"([nodes]
# id = x y chamber [cycle] [erp] [apd]
sa  = x=10 y=90 chamber=atrial cycle=800 erp=250 apd=250
mid = x=35 y=75 chamber=atrial erp=250 apd=250
av  = x=50 y=60 chamber=conduction erp=250 apd=250
his = x=52 y=50 chamber=conduction erp=250 apd=250
rv  = x=60 y=10 chamber=ventricular erp=300 apd=250
lv  = x=30 y=15 chamber=ventricular erp=300 apd=250

[paths]
sa_mid = a=sa  b=mid velocity=0.6  chamber=atrial
mid_av = a=mid b=av  velocity=0.6  chamber=atrial
av_his = a=av  b=his velocity=0.05 chamber=junctional
his_rv = a=his b=rv  velocity=1.5  chamber=ventricular
his_lv = a=his b=lv  velocity=1.5  chamber=ventricular

[electrodes]
adt = x=37 y=73
adr = x=40 y=70
vdt = x=61 y=12.5
vdr = x=63 y=16
)";

// Same geometry with the sinus node silenced (no cycle attribute), for the
// pacing-dependent crosstalk scenario.
const char kTopologySilentSa[] = R"([nodes]
sa  = x=10 y=90 chamber=atrial erp=250 apd=250
mid = x=35 y=75 chamber=atrial erp=250 apd=250
av  = x=50 y=60 chamber=conduction erp=250 apd=250
his = x=52 y=50 chamber=conduction erp=250 apd=250
rv  = x=60 y=10 chamber=ventricular erp=300 apd=250
lv  = x=30 y=15 chamber=ventricular erp=300 apd=250

[paths]
sa_mid = a=sa  b=mid velocity=0.6  chamber=atrial
mid_av = a=mid b=av  velocity=0.6  chamber=atrial
av_his = a=av  b=his velocity=0.05 chamber=junctional
his_rv = a=his b=rv  velocity=1.5  chamber=ventricular
his_lv = a=his b=lv  velocity=1.5  chamber=ventricular

[electrodes]
adt = x=37 y=73
adr = x=40 y=70
vdt = x=61 y=12.5
vdr = x=63 y=16
)";

const char kPhysics[] = R"([egm]
r_min = 2
moment_atrial = 40
moment_ventricular = 400
moment_junctional = 10
moment_repol = 80

[afterpotential]
tau = 20
k = 0.5
)";

const std::string kSegmentA = std::string(
R"(# segment_a: sinus rhythm with clean dual-chamber tracking.
# Bipolar sensing rejects everything except the local P and R waves, the
# intrinsic AV delay beats the programmed AV interval, and the device never
# has to pace.
)") + kTopology + kPhysics + R"(
[sensing]
atrial_threshold = 0.5
ventricular_threshold = 2.0
coeffs = t=0 a=1 b=1 c_va=0 c_av=0 d=1 e=0.2

[device]
lri = 1000
avi = 300
vrp = 320
pvarp = 250
pavb = 44
post_vp_atrial_blanking = 150
atrial_sense_blanking = 100
ventricular_sense_blanking = 150
pulse_width = 0.4
pulse_amplitude = 2.5
atrial_pace_node = mid
ventricular_pace_node = rv

[run]
duration_ms = 10000
dt_ms = 0.1
)";

const std::string kSegmentB = std::string(
R"(# segment_b: far-field R-wave oversensing on a unipolar atrial channel.
# Dropping the ring term (b=0) removes common-mode rejection, and the
# atrial sensitivity is programmed high (0.25 mV).  The short AV interval
# forces ventricular pacing, so the retrograde paced wavefront climbs back
# towards the atrial electrode and crosses threshold inside PVARP: one AR
# marker per paced beat.
)") + kTopology + kPhysics + R"(
[sensing]
atrial_threshold = 0.25
ventricular_threshold = 2.0
coeffs = t=0 a=1 b=0 c_va=0 c_av=0 d=1 e=0.2

[device]
lri = 1000
avi = 150
vrp = 320
pvarp = 250
pavb = 44
post_vp_atrial_blanking = 150
atrial_sense_blanking = 100
ventricular_sense_blanking = 150
pulse_width = 0.4
pulse_amplitude = 2.5
atrial_pace_node = mid
ventricular_pace_node = rv

[run]
duration_ms = 10000
dt_ms = 0.1
)";

const std::string kSegmentC = std::string(
R"(# segment_c: pace-on-pace crosstalk.  The sinus node is silent, so every
# cycle starts with an atrial pace whose afterpotential couples onto the
# ventricular channel (c_av = 5 makes the coupled tail cross the 2 mV
# ventricular threshold).  With the default post-atrial-pace ventricular
# blanking (pavb = 44 ms) the artifact is absorbed and the ventricle is
# paced on time; reducing pavb to 0 turns the artifact into a false VS that
# inhibits the ventricular pulse (crosstalk inhibition).
)") + kTopologySilentSa + kPhysics + R"(
[sensing]
atrial_threshold = 0.5
ventricular_threshold = 2.0
coeffs = t=0 a=1 b=1 c_va=0 c_av=5 d=1 e=0.1

[device]
lri = 1000
avi = 150
vrp = 320
pvarp = 250
pavb = 44
post_vp_atrial_blanking = 150
atrial_sense_blanking = 100
ventricular_sense_blanking = 150
pulse_width = 0.4
pulse_amplitude = 2.5
atrial_pace_node = mid
ventricular_pace_node = rv

[run]
duration_ms = 10000
dt_ms = 0.1
)";

const std::string kSegmentD = std::string(
R"(# segment_d: P-wave double counting under slowed intra-atrial conduction.
# The mid->av segment is slowed to 0.1 mm/ms from t=0, which stretches the
# atrial deflection far beyond the 100 ms atrial comparator blanking: the
# channel re-arms while the signal is still above threshold and fires a
# second AS on the same P wave.  The long AV interval keeps the conducted
# beat sensed rather than paced.
)") + kTopology + kPhysics + R"(
[sensing]
atrial_threshold = 0.5
ventricular_threshold = 2.0
coeffs = t=0 a=1 b=1 c_va=0 c_av=0 d=1 e=0.2

[device]
lri = 1000
avi = 450
vrp = 320
pvarp = 250
pavb = 44
post_vp_atrial_blanking = 150
atrial_sense_blanking = 100
ventricular_sense_blanking = 150
pulse_width = 0.4
pulse_amplitude = 2.5
atrial_pace_node = mid
ventricular_pace_node = rv

[overrides]
velocity = path=mid_av t=0 v=0.1

[run]
duration_ms = 10000
dt_ms = 0.1
)";

} // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"baseline", "segment_a", "segment_b", "segment_c", "segment_d"};
}

std::optional<std::string> builtin_scenario_text(const std::string& name) {
    if (name == "segment_a" || name == "baseline")
        return kSegmentA;
    if (name == "segment_b")
        return kSegmentB;
    if (name == "segment_c")
        return kSegmentC;
    if (name == "segment_d")
        return kSegmentD;
    return std::nullopt;
}

} // namespace cardio
