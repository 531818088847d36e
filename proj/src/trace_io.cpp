#include "cardio/trace_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace cardio {

namespace {

const char kHeader[] =
    "t_ms,aegm_mv,vegm_mv,as_raw,vs_raw,v_adt,v_adr,v_vdt,v_vdr,"
    "v_vrt,v_vrr,v_apa,v_vpa,marker";

[[noreturn]] void bad_row(size_t lineno, const std::string& why) {
    throw std::runtime_error("trace CSV line " + std::to_string(lineno) + ": "
                             + why);
}

// Splits one row into exactly 14 cells; the final cell (marker) may be
// empty and never contains commas.
std::array<std::string_view, 14> split_row(const std::string& row,
                                           size_t lineno) {
    std::array<std::string_view, 14> cells;
    size_t start = 0;
    for (size_t c = 0; c < 14; ++c) {
        const size_t comma = row.find(',', start);
        const bool last = c == 13;
        if (!last && comma == std::string::npos)
            bad_row(lineno, "expected 14 columns");
        if (last && comma != std::string::npos)
            bad_row(lineno, "too many columns");
        const size_t end = last ? row.size() : comma;
        cells[c] = std::string_view(row).substr(start, end - start);
        start = end + 1;
    }
    return cells;
}

double cell_number(std::string_view cell, size_t lineno) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        bad_row(lineno, "'" + std::string(cell) + "' is not a number");
    return v;
}

bool cell_flag(std::string_view cell, size_t lineno) {
    if (cell == "0")
        return false;
    if (cell == "1")
        return true;
    bad_row(lineno, "'" + std::string(cell) + "' is not a 0/1 flag");
}

std::optional<DeviceEventKind> kind_from_label(std::string_view label) {
    if (label == "AS") return DeviceEventKind::AS;
    if (label == "AR") return DeviceEventKind::AR;
    if (label == "VS") return DeviceEventKind::VS;
    if (label == "VR") return DeviceEventKind::VR;
    if (label == "AP") return DeviceEventKind::AP;
    if (label == "VP") return DeviceEventKind::VP;
    return std::nullopt;
}

} // namespace

const char* trace_csv_header() { return kHeader; }

std::string format_number(double v) {
    if (v == 0.0)
        return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << kHeader << '\n';
    for (const TraceFrame& f : trace.frames) {
        const PotentialsFrame& p = f.potentials;
        out << format_number(f.t_ms) << ','
            << format_number(f.aegm_mv) << ','
            << format_number(f.vegm_mv) << ','
            << (f.as_raw ? '1' : '0') << ','
            << (f.vs_raw ? '1' : '0') << ','
            << format_number(p.v_adt) << ','
            << format_number(p.v_adr) << ','
            << format_number(p.v_vdt) << ','
            << format_number(p.v_vdr) << ','
            << format_number(p.v_vrt) << ','
            << format_number(p.v_vrr) << ','
            << format_number(f.v_apa_mv) << ','
            << format_number(f.v_vpa_mv) << ','
            << f.marker << '\n';
    }
}

void write_trace_csv_file(const std::string& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot create output file: " + path);
    write_trace_csv(out, trace);
    out.flush();
    if (!out)
        throw std::runtime_error("failed while writing: " + path);
}

Trace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty trace CSV");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kHeader)
        throw std::runtime_error("not a trace CSV (unexpected header)");

    Trace trace;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split_row(line, lineno);
        TraceFrame f;
        f.t_ms = cell_number(cells[0], lineno);
        f.aegm_mv = cell_number(cells[1], lineno);
        f.vegm_mv = cell_number(cells[2], lineno);
        f.as_raw = cell_flag(cells[3], lineno);
        f.vs_raw = cell_flag(cells[4], lineno);
        f.potentials.v_adt = cell_number(cells[5], lineno);
        f.potentials.v_adr = cell_number(cells[6], lineno);
        f.potentials.v_vdt = cell_number(cells[7], lineno);
        f.potentials.v_vdr = cell_number(cells[8], lineno);
        f.potentials.v_vrt = cell_number(cells[9], lineno);
        f.potentials.v_vrr = cell_number(cells[10], lineno);
        f.v_apa_mv = cell_number(cells[11], lineno);
        f.v_vpa_mv = cell_number(cells[12], lineno);
        f.marker = std::string(cells[13]);

        // rebuild the device-event stream from the marker column
        std::string_view rest = cells[13];
        while (!rest.empty()) {
            const size_t plus = rest.find('+');
            const std::string_view label =
                plus == std::string_view::npos ? rest : rest.substr(0, plus);
            const auto kind = kind_from_label(label);
            if (!kind)
                bad_row(lineno,
                        "unknown marker '" + std::string(label) + "'");
            trace.device_events.push_back({*kind, f.t_ms});
            if (plus == std::string_view::npos)
                break;
            rest.remove_prefix(plus + 1);
        }
        trace.frames.push_back(std::move(f));
    }
    if (trace.frames.empty())
        throw std::runtime_error("trace CSV has a header but no frames");
    if (trace.frames.size() >= 2)
        trace.dt_ms = trace.frames[1].t_ms - trace.frames[0].t_ms;
    return trace;
}

Trace read_trace_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open trace CSV: " + path);
    Trace trace = read_trace_csv(in);
    std::string stem = path;
    if (const size_t slash = stem.find_last_of("/\\"); slash != std::string::npos)
        stem.erase(0, slash + 1);
    if (const size_t dot = stem.find_last_of('.'); dot != std::string::npos)
        stem.erase(dot);
    trace.scenario = stem;
    return trace;
}

} // namespace cardio
