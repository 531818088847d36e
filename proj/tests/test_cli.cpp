#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

// Exercises the installed binary end to end through a shell, covering
// argument handling, scenario resolution, exit codes and output artifacts.

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

CommandResult run_command(const std::string& args) {
    const std::string cmd = std::string(CARDIOSIM_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult r;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

size_t count_lines(const std::string& s) {
    size_t n = 0;
    for (char c : s)
        if (c == '\n')
            ++n;
    return n;
}

// One scratch directory for the whole binary run.
const std::string& scratch_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/cardiosim_cli_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

const char kCsvHeader[] =
    "t_ms,aegm_mv,vegm_mv,as_raw,vs_raw,v_adt,v_adr,v_vdt,v_vdr,v_vrt,v_vrr,"
    "v_apa,v_vpa,marker";

} // namespace

TEST_CASE("list-scenarios prints the built-in names, one per line") {
    const CommandResult r = run_command("list-scenarios");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "baseline\nsegment_a\nsegment_b\nsegment_c\nsegment_d\n");
}

TEST_CASE("validate reports the parsed shape of a built-in scenario") {
    const CommandResult r = run_command("validate --scenario segment_a");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("OK: segment_a (6 nodes, 5 paths, 10000 ms at dt=0.1)")
          != std::string::npos);
}

TEST_CASE("an unresolvable scenario reference exits with code 1") {
    const CommandResult r = run_command("validate --scenario no_such_scenario");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("unknown scenario") != std::string::npos);
}

TEST_CASE("run writes a CSV trace and a text summary") {
    const std::string csv = scratch_dir() + "/a.csv";
    const CommandResult r = run_command(
        "run --scenario segment_a --duration-ms 1000 --out " + csv);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("scenario: segment_a") != std::string::npos);
    CHECK(r.output.find("markers: AS=") != std::string::npos);
    CHECK(r.output.find("overlap_warnings: 0") != std::string::npos);

    const std::string body = slurp(csv);
    CHECK(body.compare(0, sizeof kCsvHeader - 1, kCsvHeader) == 0);
    CHECK(count_lines(body) == 10001);  // header + 1000 ms at 0.1 ms
}

TEST_CASE("run without --out streams the CSV to stdout") {
    const CommandResult r =
        run_command("run --scenario segment_a --duration-ms 10");
    CHECK(r.exit_code == 0);
    CHECK(r.output.compare(0, sizeof kCsvHeader - 1, kCsvHeader) == 0);
    CHECK(count_lines(r.output) == 101);
}

TEST_CASE("repeated runs produce byte-identical traces") {
    const std::string first = scratch_dir() + "/d1.csv";
    const std::string second = scratch_dir() + "/d2.csv";
    CHECK(run_command("run --scenario segment_b --duration-ms 500 --out "
                      + first).exit_code == 0);
    CHECK(run_command("run --scenario segment_b --duration-ms 500 --out "
                      + second).exit_code == 0);
    CHECK(slurp(first) == slurp(second));
}

TEST_CASE("plot writes an SVG strip chart") {
    const std::string svg = scratch_dir() + "/a.svg";
    const CommandResult r = run_command(
        "plot --scenario segment_a --duration-ms 600 --out " + svg);
    CHECK(r.exit_code == 0);
    const std::string body = slurp(svg);
    CHECK(body.compare(0, 4, "<svg") == 0);
    CHECK(body.find("polyline") != std::string::npos);
    CHECK(body.find("AEGM") != std::string::npos);
}

TEST_CASE("a scenario can be given as a file path") {
    const std::string path = scratch_dir() + "/custom_case.scn";
    {
        std::ofstream out(path);
        out << "[run]\ntopology = baseline\nduration_ms = 200\n";
    }
    const CommandResult r = run_command("validate --scenario " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("OK: custom_case") != std::string::npos);
}

TEST_CASE("bare names resolve through CARDIO_SCENARIO_PATH") {
    const std::string dir = scratch_dir();
    {
        std::ofstream out(dir + "/from_env.scn");
        out << "[run]\ntopology = baseline\nduration_ms = 150\n";
    }
    REQUIRE(setenv("CARDIO_SCENARIO_PATH", ("/nonexistent:" + dir).c_str(), 1)
            == 0);
    const CommandResult r = run_command("validate --scenario from_env");
    unsetenv("CARDIO_SCENARIO_PATH");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("OK: from_env") != std::string::npos);
}

TEST_CASE("plot renders a previously written trace CSV without re-simulating") {
    const std::string csv = scratch_dir() + "/replot.csv";
    REQUIRE(run_command("run --scenario segment_a --duration-ms 2000 --out "
                        + csv).exit_code == 0);
    const std::string svg = scratch_dir() + "/replot.svg";
    const CommandResult r = run_command(
        "plot --scenario " + csv + " --out " + svg
        + " --t-start 500 --t-end 1000");
    CHECK(r.exit_code == 0);
    const std::string body = slurp(svg);
    CHECK(body.compare(0, 4, "<svg") == 0);

    // the windowed panels contain exactly the rows inside [500, 1000]
    size_t rows_in_window = 0;
    {
        std::istringstream rows(slurp(csv));
        std::string line;
        std::getline(rows, line);  // header
        while (std::getline(rows, line)) {
            const double t = std::stod(line.substr(0, line.find(',')));
            if (t >= 500.0 && t <= 1000.0)
                ++rows_in_window;
        }
    }
    REQUIRE(rows_in_window > 0);
    const size_t attr = body.find("points=\"", body.find("<polyline"));
    REQUIRE(attr != std::string::npos);
    const size_t begin = attr + 8;
    const size_t end = body.find('"', begin);
    size_t points = 0;
    for (size_t i = begin; i < end; ++i)
        if (body[i] == ',')
            ++points;
    CHECK(points == rows_in_window);
}

TEST_CASE("an empty CSV given to plot exits with code 2") {
    const std::string csv = scratch_dir() + "/empty.csv";
    { std::ofstream out(csv); }
    const CommandResult r =
        run_command("plot --scenario " + csv + " --out "
                    + scratch_dir() + "/empty.svg");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("empty") != std::string::npos);
}

TEST_CASE("zero or negative timing overrides are rejected") {
    const CommandResult dt = run_command(
        "run --scenario segment_a --dt-ms 0 --out " + scratch_dir() + "/z.csv");
    CHECK(dt.exit_code == 1);
    CHECK(dt.output.find("dt_ms must be > 0") != std::string::npos);

    const CommandResult dur = run_command(
        "run --scenario segment_a --duration-ms -5 --out "
        + scratch_dir() + "/z2.csv");
    CHECK(dur.exit_code == 1);
    CHECK(dur.output.find("duration_ms must be > 0") != std::string::npos);
}

TEST_CASE("an unwritable output path exits with code 2") {
    const CommandResult r = run_command(
        "run --scenario segment_a --duration-ms 10 --out /no_such_dir/x.csv");
    CHECK(r.exit_code == 2);
}

TEST_CASE("a scenario that fails validation exits with code 1") {
    const std::string path = scratch_dir() + "/broken.scn";
    {
        std::ofstream out(path);
        out << "[sensing]\ncoeffs = t=0 b=2\n"
            << "[run]\ntopology = baseline\nduration_ms = 100\n";
    }
    const CommandResult r = run_command("validate --scenario " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("scenario error") != std::string::npos);
    CHECK(r.output.find("b must be within [0, 1]") != std::string::npos);
}
