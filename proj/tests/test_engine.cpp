#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cardio/builtin_scenarios.hpp"
#include "cardio/engine.hpp"
#include "cardio/scenario.hpp"
#include "cardio/trace_io.hpp"

using namespace cardio;

namespace {

Scenario builtin(const std::string& name) {
    return load_scenario(*builtin_scenario_text(name), name);
}

std::vector<DeviceEvent> of_kind(const Trace& trace, DeviceEventKind kind) {
    std::vector<DeviceEvent> out;
    for (const DeviceEvent& e : trace.device_events)
        if (e.kind == kind)
            out.push_back(e);
    return out;
}

} // namespace

TEST_CASE("the frame grid is dense, uniform and starts at zero") {
    Scenario sc = builtin("segment_a");
    sc.run.duration_ms = 50.0;
    const Trace trace = run_simulation(sc);
    REQUIRE(trace.frames.size() == 500);
    CHECK(trace.dt_ms == 0.1);
    CHECK(trace.frames[0].t_ms == 0.0);
    int bad_grid = 0;
    for (size_t k = 0; k < trace.frames.size(); ++k)
        if (trace.frames[k].t_ms != static_cast<double>(k) * 0.1)
            ++bad_grid;
    CHECK(bad_grid == 0);
}

TEST_CASE("marker labels spell the six device annotations") {
    CHECK(std::string(marker_label(DeviceEventKind::AS)) == "AS");
    CHECK(std::string(marker_label(DeviceEventKind::AR)) == "AR");
    CHECK(std::string(marker_label(DeviceEventKind::VS)) == "VS");
    CHECK(std::string(marker_label(DeviceEventKind::VR)) == "VR");
    CHECK(std::string(marker_label(DeviceEventKind::AP)) == "AP");
    CHECK(std::string(marker_label(DeviceEventKind::VP)) == "VP");
}

TEST_CASE("two runs of the same scenario agree sample for sample") {
    Scenario sc = builtin("segment_a");
    sc.run.duration_ms = 3000.0;
    const Trace first = run_simulation(sc);
    const Trace second = run_simulation(sc);
    REQUIRE(first.frames.size() == second.frames.size());
    int mismatches = 0;
    for (size_t k = 0; k < first.frames.size(); ++k) {
        const TraceFrame& f = first.frames[k];
        const TraceFrame& s = second.frames[k];
        if (f.t_ms != s.t_ms || f.aegm_mv != s.aegm_mv
            || f.vegm_mv != s.vegm_mv || f.as_raw != s.as_raw
            || f.vs_raw != s.vs_raw || f.v_apa_mv != s.v_apa_mv
            || f.v_vpa_mv != s.v_vpa_mv || f.marker != s.marker)
            ++mismatches;
    }
    CHECK(mismatches == 0);
    REQUIRE(first.device_events.size() == second.device_events.size());
    for (size_t i = 0; i < first.device_events.size(); ++i) {
        CHECK(first.device_events[i].kind == second.device_events[i].kind);
        CHECK(first.device_events[i].t_ms == second.device_events[i].t_ms);
    }
    CHECK(first.activations.size() == second.activations.size());
    CHECK(first.conduction_events.size() == second.conduction_events.size());
}

TEST_CASE("clean tracking: every beat earns exactly one sense per chamber") {
    const Scenario sc = builtin("segment_a");
    const Trace trace = run_simulation(sc);
    REQUIRE(trace.frames.size() == 100000);
    CHECK(trace.scenario == "segment_a");
    CHECK(trace.overlap_warnings == 0);

    const RunSummary sum = summarize_events(trace, sc);
    CHECK(sum.as == 13);
    CHECK(sum.ar == 0);
    CHECK(sum.vs == 13);
    CHECK(sum.vr == 12);  // repolarisation deflections inside VRP
    CHECK(sum.ap == 0);
    CHECK(sum.vp == 0);
    REQUIRE(sum.as_per_atrial_activation.size() == 1);
    CHECK(sum.as_per_atrial_activation.at(1) == 13);
    REQUIRE(sum.vs_per_ventricular_activation.size() == 1);
    CHECK(sum.vs_per_ventricular_activation.at(1) == 13);

    // The 1:1 ventricular histogram above is only possible if senses are
    // paired with the nearest lead-site activation: the R-wave edge crosses
    // threshold while the wavefront is still short of the electrode node,
    // so each VS slightly precedes the activation it belongs to.
    const auto vs = of_kind(trace, DeviceEventKind::VS);
    const int rv = [&] {
        for (size_t i = 0; i < sc.nodes.size(); ++i)
            if (sc.nodes[i].id == "rv") return static_cast<int>(i);
        return -1;
    }();
    REQUIRE(!vs.empty());
    double first_rv_activation = -1.0;
    for (const ActivationRecord& a : trace.activations)
        if (a.node == rv && a.captured) { first_rv_activation = a.t_ms; break; }
    CHECK(vs.front().t_ms < first_rv_activation);
    CHECK(first_rv_activation - vs.front().t_ms < 20.0);
}

TEST_CASE("event streams are time-ordered") {
    Scenario sc = builtin("segment_b");
    sc.run.duration_ms = 4000.0;
    const Trace trace = run_simulation(sc);
    auto nondecreasing = [](const auto& v) {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i].t_ms < v[i - 1].t_ms)
                return false;
        return true;
    };
    CHECK(nondecreasing(trace.device_events));
    CHECK(nondecreasing(trace.activations));
    CHECK(nondecreasing(trace.conduction_events));
}

TEST_CASE("captured activations of one node stay at least one refractory apart") {
    Scenario sc = builtin("segment_b");
    sc.run.duration_ms = 5000.0;
    const Trace trace = run_simulation(sc);
    std::vector<double> last(sc.nodes.size(), -1e9);
    int violations = 0;
    for (const ActivationRecord& a : trace.activations) {
        if (!a.captured)
            continue;
        if (a.t_ms - last[a.node] < sc.nodes[a.node].erp_ms - 1e-6)
            ++violations;
        last[a.node] = a.t_ms;
    }
    CHECK(violations == 0);
}

TEST_CASE("paced rhythm: atrial escape, then the ventricle exactly one AV later") {
    Scenario sc = builtin("segment_c");
    sc.run.duration_ms = 3000.0;
    const Trace trace = run_simulation(sc);

    const auto ap = of_kind(trace, DeviceEventKind::AP);
    const auto vp = of_kind(trace, DeviceEventKind::VP);
    const auto vr = of_kind(trace, DeviceEventKind::VR);
    REQUIRE(ap.size() == 3);
    REQUIRE(vp.size() == 2);
    CHECK(of_kind(trace, DeviceEventKind::AS).empty());
    CHECK(of_kind(trace, DeviceEventKind::VS).empty());

    // first atrial escape: boot timing base 0 + (lri - avi) = 850
    CHECK(ap[0].t_ms == doctest::Approx(850.0).epsilon(1e-9));
    CHECK(ap[1].t_ms == doctest::Approx(1850.0).epsilon(1e-9));
    for (size_t i = 0; i < vp.size(); ++i)
        CHECK(vp[i].t_ms - ap[i].t_ms
              == doctest::Approx(sc.device.avi_ms).epsilon(1e-9));

    // the cross-coupled pace artifact lands in the post-atrial-pace blanking
    // and is annotated as refractory
    REQUIRE(vr.size() >= 2);
    CHECK(vr[0].t_ms - ap[0].t_ms > 0.3);
    CHECK(vr[0].t_ms - ap[0].t_ms < 0.6);

    // afterpotential tails show up on the dedicated trace channels
    const size_t k_tail = static_cast<size_t>(std::lround(851.0 / 0.1));
    CHECK(trace.frames[k_tail].v_apa_mv < -0.4);
    const size_t k_before = static_cast<size_t>(std::lround(849.0 / 0.1));
    CHECK(trace.frames[k_before].v_apa_mv == 0.0);
    const size_t k_vtail = static_cast<size_t>(std::lround(1001.0 / 0.1));
    CHECK(trace.frames[k_vtail].v_vpa_mv < -0.4);

    // markers land on the frames that produced the events
    const size_t k_ap = static_cast<size_t>(std::lround(850.0 / 0.1));
    CHECK(trace.frames[k_ap].marker == "AP");
}

TEST_CASE("an empty trace summarizes to all-zero counts") {
    const Scenario sc = builtin("segment_a");
    const RunSummary sum = summarize_events(Trace{}, sc);
    CHECK(sum.as == 0);
    CHECK(sum.ar == 0);
    CHECK(sum.vs == 0);
    CHECK(sum.vr == 0);
    CHECK(sum.ap == 0);
    CHECK(sum.vp == 0);
    CHECK(sum.as_per_atrial_activation.empty());
    CHECK(sum.vs_per_ventricular_activation.empty());
}

TEST_CASE("the trace CSV round-trips frames and markers") {
    Scenario sc = builtin("segment_a");
    SUBCASE("a one-frame trace serializes to header plus one row") {
        sc.run.duration_ms = 0.1;
        std::ostringstream out;
        write_trace_csv(out, run_simulation(sc));
        const std::string body = out.str();
        CHECK(std::count(body.begin(), body.end(), '\n') == 2);
        CHECK(body.rfind(trace_csv_header(), 0) == 0);
    }
    SUBCASE("serialize, parse, serialize is a fixed point") {
        sc.run.duration_ms = 1200.0;
        const Trace orig = run_simulation(sc);
        std::ostringstream first;
        write_trace_csv(first, orig);
        std::istringstream in(first.str());
        const Trace back = read_trace_csv(in);
        REQUIRE(back.frames.size() == orig.frames.size());
        REQUIRE(back.device_events.size() == orig.device_events.size());
        int kind_mismatches = 0;
        for (size_t i = 0; i < back.device_events.size(); ++i)
            if (back.device_events[i].kind != orig.device_events[i].kind)
                ++kind_mismatches;
        CHECK(kind_mismatches == 0);
        std::ostringstream second;
        write_trace_csv(second, back);
        CHECK(first.str() == second.str());
    }
    SUBCASE("foreign or truncated input is rejected") {
        std::istringstream empty("");
        CHECK_THROWS_AS(read_trace_csv(empty), std::runtime_error);
        std::istringstream foreign("time,voltage\n1,2\n");
        CHECK_THROWS_AS(read_trace_csv(foreign), std::runtime_error);
        std::istringstream truncated(std::string(trace_csv_header())
                                     + "\n1,2,3\n");
        CHECK_THROWS_AS(read_trace_csv(truncated), std::runtime_error);
    }
}

TEST_CASE("slow atrial conduction doubles the atrial sense count") {
    const Scenario sc = builtin("segment_d");
    const Trace trace = run_simulation(sc);
    const RunSummary sum = summarize_events(trace, sc);
    CHECK(sum.as == 26);
    CHECK(sum.vs == 12);
    REQUIRE(sum.as_per_atrial_activation.size() == 1);
    CHECK(sum.as_per_atrial_activation.at(2) == 13);
    CHECK(sum.vs_per_ventricular_activation.at(1) == 12);
    CHECK(trace.overlap_warnings == 0);
}
