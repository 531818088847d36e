#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "cardio/builtin_scenarios.hpp"
#include "cardio/faults.hpp"
#include "cardio/scenario.hpp"

using namespace cardio;

namespace {

const std::string kMinimal = R"(
[sensing]
atrial_threshold = 0.4

[run]
topology = baseline
duration_ms = 1000
)";

// Throws are asserted on line/column through this helper so failures print
// the offending message.
ScenarioError capture(const std::string& text) {
    try {
        load_scenario(text, "t");
    } catch (const ScenarioError& e) {
        return e;
    }
    FAIL("expected the scenario to be rejected");
    return ScenarioError("unreachable");
}

} // namespace

TEST_CASE("all built-in scenarios parse, validate and carry the shared geometry") {
    for (const std::string& name : builtin_scenario_names()) {
        CAPTURE(name);
        const auto text = builtin_scenario_text(name);
        REQUIRE(text.has_value());
        const Scenario sc = load_scenario(*text, name);
        CHECK(sc.nodes.size() == 6);
        CHECK(sc.paths.size() == 5);
        CHECK(sc.run.duration_ms == 10000.0);
        CHECK(sc.run.dt_ms == 0.1);
        CHECK(sc.nodes[sc.atrial_pace_node].chamber == NodeChamber::Atrial);
        CHECK(sc.nodes[sc.ventricular_pace_node].chamber
              == NodeChamber::Ventricular);
    }
    CHECK_FALSE(builtin_scenario_text("no_such_thing").has_value());
}

TEST_CASE("the baseline name aliases the clean-tracking scenario") {
    const Scenario a = load_scenario(*builtin_scenario_text("segment_a"), "a");
    const Scenario b = load_scenario(*builtin_scenario_text("baseline"), "b");
    CHECK(a.device.avi_ms == b.device.avi_ms);
    CHECK(a.nodes.size() == b.nodes.size());
    CHECK(a.sensing.atrial_threshold_mv == b.sensing.atrial_threshold_mv);
}

TEST_CASE("topology shortcut expands to the canonical geometry") {
    const Scenario sc = load_scenario(kMinimal, "mini");
    REQUIRE(sc.nodes.size() == 6);
    CHECK(sc.nodes[0].id == "sa");
    CHECK(sc.nodes[0].intrinsic_cycle_ms == 800.0);
    CHECK(sc.paths[2].id == "av_his");
    CHECK(sc.paths[2].velocity_mm_per_ms == 0.05);
    // overridden value took, defaults filled the rest
    CHECK(sc.sensing.atrial_threshold_mv == 0.4);
    CHECK(sc.sensing.ventricular_threshold_mv == 2.0);
    CHECK(sc.device.lri_ms == 1000.0);
    REQUIRE(sc.sensing.schedule.entries.size() == 1);
    CHECK(sc.sensing.schedule.entries[0].coefficients.b == 1.0);
    // pace targets default to the first node of each chamber
    CHECK(sc.nodes[sc.atrial_pace_node].id == "sa");
    CHECK(sc.nodes[sc.ventricular_pace_node].id == "rv");
}

TEST_CASE("explicit topology plus the shortcut is rejected") {
    const std::string text = kMinimal + R"(
[nodes]
x = x=0 y=0 chamber=atrial
)";
    CHECK_THROWS_AS(load_scenario(text, "t"), ScenarioError);
}

TEST_CASE("unknown sections, keys and attributes carry line and column") {
    SUBCASE("unknown section") {
        const ScenarioError e = capture("[warp_drive]\n");
        CHECK(e.line() == 1);
        CHECK(e.column() == 1);
        CHECK(std::string(e.what()).find("warp_drive") != std::string::npos);
    }
    SUBCASE("unknown key in a settings section") {
        // kMinimal spans lines 1-7, so [device] lands on line 8.
        const ScenarioError e = capture(kMinimal + "[device]\n  foo = 1\n");
        CHECK(e.line() == 9);
        CHECK(e.column() == 3);  // first non-blank column
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }
    SUBCASE("unknown attribute inside a record") {
        const ScenarioError e =
            capture("[nodes]\nsa = x=1 y=2 chamber=atrial warp=9\n");
        CHECK(e.line() == 2);
        CHECK(e.column() == 29);  // points at the attribute token
        CHECK(std::string(e.what()).find("warp") != std::string::npos);
    }
    SUBCASE("malformed number") {
        const ScenarioError e = capture("[nodes]\nsa = x=abc y=2 chamber=atrial\n");
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("abc") != std::string::npos);
    }
    SUBCASE("content before any section") {
        const ScenarioError e = capture("duration_ms = 5\n");
        CHECK(e.line() == 1);
    }
}

TEST_CASE("duplicate identifiers are rejected") {
    CHECK_THROWS_WITH_AS(
        load_scenario("[nodes]\n"
                      "a = x=0 y=0 chamber=atrial\n"
                      "a = x=1 y=1 chamber=atrial\n",
                      "t"),
        doctest::Contains("duplicate node id 'a'"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        load_scenario("[run]\nduration_ms = 1\nduration_ms = 2\n", "t"),
        doctest::Contains("duplicate key 'duration_ms'"), ScenarioError);
}

TEST_CASE("semantic validation names the offender") {
    SUBCASE("ring-rejection weight outside [0, 1]") {
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[sensing]\ncoeffs = t=0 b=2\n"
                          , "t"),
            doctest::Contains("b must be within [0, 1]"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[sensing]\ncoeffs = t=0 a=-0.5\n", "t"),
            doctest::Contains("a must be within [0, 1]"), ScenarioError);
    }
    SUBCASE("device interval ordering") {
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[device]\nlri = 400\navi = 400\n", "t"),
            doctest::Contains("avi must be < lri"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[device]\navi = 100\npavb = 150\n", "t"),
            doctest::Contains("pavb must be < avi"), ScenarioError);
    }
    SUBCASE("electrode spacing window") {
        const std::string t = R"(
[nodes]
a = x=0 y=0 chamber=atrial
v = x=30 y=0 chamber=ventricular
[paths]
av = a=a b=v velocity=1 chamber=ventricular
[electrodes]
adt = x=0 y=5
adr = x=0 y=45
vdt = x=30 y=5
vdr = x=30 y=9
[run]
duration_ms = 100
)";
        CHECK_THROWS_WITH_AS(load_scenario(t, "t"),
                             doctest::Contains("spacing"), ScenarioError);
    }
    SUBCASE("dangling references") {
        CHECK_THROWS_WITH_AS(
            load_scenario("[nodes]\na = x=0 y=0 chamber=atrial\n"
                          "[paths]\np = a=a b=ghost velocity=1 chamber=atrial\n",
                          "t"),
            doctest::Contains("unknown node 'ghost'"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[overrides]\n"
                          "velocity = path=ghost t=0 v=0.1\n",
                          "t"),
            doctest::Contains("unknown path 'ghost'"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[device]\natrial_pace_node = ghost\n", "t"),
            doctest::Contains("unknown node 'ghost'"), ScenarioError);
    }
    SUBCASE("pace target must live in the right chamber") {
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[device]\natrial_pace_node = rv\n", "t"),
            doctest::Contains("not an atrial node"), ScenarioError);
    }
    SUBCASE("coefficient schedule shape") {
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[sensing]\ncoeffs = t=100 a=1\n", "t"),
            doctest::Contains("start at t=0"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[sensing]\ncoeffs = t=0 a=1\n"
                          "coeffs = t=0 a=0.5\n",
                          "t"),
            doctest::Contains("strictly increasing"), ScenarioError);
    }
    SUBCASE("run section sanity") {
        CHECK_THROWS_WITH_AS(
            load_scenario("[run]\ntopology = baseline\n", "t"),
            doctest::Contains("duration_ms"), ScenarioError);
        CHECK_THROWS_AS(load_scenario(kMinimal + "\n[run2]", "t"),
                        ScenarioError);
    }
    SUBCASE("positive-quantity guards") {
        CHECK_THROWS_WITH_AS(
            load_scenario("[nodes]\na = x=0 y=0 chamber=atrial erp=0\n"
                          "v = x=30 y=0 chamber=ventricular\n"
                          "[paths]\np = a=a b=v velocity=1 chamber=atrial\n"
                          "[electrodes]\nadt = x=0 y=5\nadr = x=0 y=9\n"
                          "vdt = x=30 y=5\nvdr = x=30 y=9\n"
                          "[run]\nduration_ms = 100\n",
                          "t"),
            doctest::Contains("erp must be > 0"), ScenarioError);
        CHECK_THROWS_WITH_AS(
            load_scenario(kMinimal + "\n[overrides]\n"
                          "velocity = path=mid_av t=0 v=0\n",
                          "t"),
            doctest::Contains("velocity must be > 0"), ScenarioError);
    }
}

TEST_CASE("comments, blank lines and tight spacing all parse") {
    const std::string text = R"(# leading comment
[run]   # trailing comment on a section
topology=baseline
duration_ms=250   # and on a value
dt_ms = 0.5

[sensing]
# a full-line comment
ventricular_threshold = 1.5
)";
    const Scenario sc = load_scenario(text, "t");
    CHECK(sc.run.duration_ms == 250.0);
    CHECK(sc.run.dt_ms == 0.5);
    CHECK(sc.sensing.ventricular_threshold_mv == 1.5);
}

TEST_CASE("scenario files load by path and name themselves after the stem") {
    const std::string path = "/tmp/cardio_scn_test.scn";
    {
        std::ofstream out(path);
        out << kMinimal;
    }
    const Scenario sc = load_scenario_file(path);
    CHECK(sc.name == "cardio_scn_test");
    CHECK(sc.nodes.size() == 6);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_scenario_file("/tmp/definitely_missing_972.scn"),
                    std::runtime_error);
}

TEST_CASE("per-chamber dipole strengths resolve through the lookup") {
    EgmParams egm;
    CHECK(moment_for_chamber(egm, PathChamber::Atrial) == 40.0);
    CHECK(moment_for_chamber(egm, PathChamber::Ventricular) == 400.0);
    CHECK(moment_for_chamber(egm, PathChamber::Junctional) == 10.0);
}

TEST_CASE("velocity overrides parse into resolved path indices") {
    const Scenario sc =
        load_scenario(*builtin_scenario_text("segment_d"), "segment_d");
    REQUIRE(sc.overrides.size() == 1);
    CHECK(sc.paths[sc.overrides[0].path].id == "mid_av");
    CHECK(sc.overrides[0].start_ms == 0.0);
    CHECK(sc.overrides[0].velocity_mm_per_ms == 0.1);
}
