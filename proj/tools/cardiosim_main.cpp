// cardiosim: closed-loop heart / dual-chamber pacemaker simulator.
//
//   cardiosim list-scenarios
//   cardiosim validate --scenario segment_a
//   cardiosim run  --scenario segment_b --out trace.csv
//   cardiosim plot --scenario segment_d --out trace.svg --t-start 0 --t-end 2000
//   cardiosim plot --scenario trace.csv --out trace.svg
//
// --scenario accepts a built-in name, a file path, or a bare name looked up
// in the directories listed in CARDIO_SCENARIO_PATH (colon separated). For
// plot it may also be a CSV previously written by run; the trace is then
// rendered as-is instead of being re-simulated.
// Exit codes: 0 success, 1 bad scenario, 2 input/output failure, 3 internal
// simulation fault.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cardio/builtin_scenarios.hpp"
#include "cardio/engine.hpp"
#include "cardio/faults.hpp"
#include "cardio/scenario.hpp"
#include "cardio/svg_plot.hpp"
#include "cardio/trace_io.hpp"

namespace {

std::optional<std::string> find_on_search_path(const std::string& name) {
    const char* raw = std::getenv("CARDIO_SCENARIO_PATH");
    if (!raw)
        return std::nullopt;
    std::string paths = raw;
    size_t pos = 0;
    while (pos <= paths.size()) {
        const size_t colon = paths.find(':', pos);
        const std::string dir =
            paths.substr(pos, colon == std::string::npos ? std::string::npos
                                                         : colon - pos);
        if (!dir.empty()) {
            for (const std::string& candidate :
                 {dir + "/" + name, dir + "/" + name + ".scn"}) {
                std::error_code ec;
                if (std::filesystem::is_regular_file(candidate, ec))
                    return candidate;
            }
        }
        if (colon == std::string::npos)
            break;
        pos = colon + 1;
    }
    return std::nullopt;
}

cardio::Scenario resolve_scenario(const std::string& ref) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(ref, ec))
        return cardio::load_scenario_file(ref);
    if (const auto text = cardio::builtin_scenario_text(ref))
        return cardio::load_scenario(*text, ref);
    if (const auto found = find_on_search_path(ref))
        return cardio::load_scenario_file(*found);
    throw cardio::ScenarioError(
        "unknown scenario '" + ref
        + "': not a file, not a built-in, not on CARDIO_SCENARIO_PATH");
}

// A plot input is a pre-rendered trace when it is a file opening with the
// trace CSV header.
bool is_trace_csv(const std::string& ref) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(ref, ec))
        return false;
    std::ifstream in(ref, std::ios::binary);
    if (!in)
        return false;
    std::string first;
    std::getline(in, first);
    if (!first.empty() && first.back() == '\r')
        first.pop_back();
    return first == cardio::trace_csv_header();
}

void print_summary(const cardio::Trace& trace, const cardio::Scenario& sc,
                   std::ostream& out) {
    const cardio::RunSummary s = cardio::summarize_events(trace, sc);
    out << "scenario: " << sc.name << "\n"
        << "frames: " << trace.frames.size() << "\n"
        << "markers: AS=" << s.as << " AR=" << s.ar << " VS=" << s.vs
        << " VR=" << s.vr << " AP=" << s.ap << " VP=" << s.vp << "\n";
    auto hist = [&out](const char* label, const std::map<int, int>& h) {
        out << label << ":";
        if (h.empty())
            out << " -";
        for (const auto& [senses, beats] : h)
            out << ' ' << senses << ":" << beats;
        out << "\n";
    };
    hist("as_per_atrial_activation", s.as_per_atrial_activation);
    hist("vs_per_ventricular_activation", s.vs_per_ventricular_activation);
    out << "overlap_warnings: " << trace.overlap_warnings << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-loop cardiac conduction / pacemaker simulator"};
    app.require_subcommand(1);

    std::string scenario_ref, out_path;
    double duration_override = -1.0, dt_override = -1.0;
    double t_start = 0.0, t_end = -1.0;
    int width = 1200, panel_height = 110;

    CLI::App* run = app.add_subcommand("run", "simulate and write the trace CSV");
    run->add_option("--scenario", scenario_ref, "built-in name or file")
        ->required();
    run->add_option("--out", out_path, "CSV destination (default: stdout)");
    run->add_option("--duration-ms", duration_override, "override run length");
    run->add_option("--dt-ms", dt_override, "override step size");

    CLI::App* plot = app.add_subcommand("plot", "simulate and write an SVG strip chart");
    plot->add_option("--scenario", scenario_ref, "built-in name or file")
        ->required();
    plot->add_option("--out", out_path, "SVG destination")->required();
    plot->add_option("--duration-ms", duration_override, "override run length");
    plot->add_option("--dt-ms", dt_override, "override step size");
    plot->add_option("--t-start", t_start, "window start, ms");
    plot->add_option("--t-end", t_end, "window end, ms (default: end of run)");
    plot->add_option("--width", width, "image width, px");
    plot->add_option("--panel-height", panel_height, "signal panel height, px");

    CLI::App* validate = app.add_subcommand("validate", "parse and check a scenario");
    validate->add_option("--scenario", scenario_ref, "built-in name or file")
        ->required();

    app.add_subcommand("list-scenarios", "print the built-in scenario names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list-scenarios")) {
            for (const std::string& name : cardio::builtin_scenario_names())
                std::cout << name << "\n";
            return 0;
        }

        cardio::PlotOptions opts;
        opts.t_start_ms = t_start;
        opts.t_end_ms = t_end;
        opts.width_px = width;
        opts.panel_height_px = panel_height;

        // plot straight from a previously written trace; a .csv suffix or
        // the trace header marks the input as a trace rather than a scenario
        if (app.got_subcommand("plot")
            && (std::filesystem::path(scenario_ref).extension() == ".csv"
                || is_trace_csv(scenario_ref))) {
            cardio::write_trace_svg_file(
                out_path, cardio::read_trace_csv_file(scenario_ref), opts);
            return 0;
        }

        cardio::Scenario sc = resolve_scenario(scenario_ref);
        CLI::App* timing = app.got_subcommand("run") ? run
                         : app.got_subcommand("plot") ? plot
                                                      : nullptr;
        if (timing) {
            if (timing->count("--duration-ms"))
                sc.run.duration_ms = duration_override;
            if (timing->count("--dt-ms"))
                sc.run.dt_ms = dt_override;
            if (!(sc.run.duration_ms > 0.0))
                throw cardio::ScenarioError("run: duration_ms must be > 0");
            if (!(sc.run.dt_ms > 0.0))
                throw cardio::ScenarioError("run: dt_ms must be > 0");
        }

        if (app.got_subcommand("validate")) {
            std::cout << "OK: " << sc.name << " (" << sc.nodes.size()
                      << " nodes, " << sc.paths.size() << " paths, "
                      << cardio::format_number(sc.run.duration_ms)
                      << " ms at dt=" << cardio::format_number(sc.run.dt_ms)
                      << ")\n";
            return 0;
        }

        const cardio::Trace trace = cardio::run_simulation(sc);

        if (app.got_subcommand("run")) {
            if (out_path.empty()) {
                cardio::write_trace_csv(std::cout, trace);
            } else {
                cardio::write_trace_csv_file(out_path, trace);
                print_summary(trace, sc, std::cout);
            }
            return 0;
        }

        // plot from the freshly simulated trace
        cardio::write_trace_svg_file(out_path, trace, opts);
        return 0;
    } catch (const cardio::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return 1;
    } catch (const cardio::SimulationFault& e) {
        std::cerr << "simulation fault: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
