#include "cardio/svg_plot.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cardio/trace_io.hpp"

namespace cardio {

namespace {

struct Window {
    size_t first = 0, last = 0;  // frame index range, inclusive
    double t0 = 0.0, t1 = 0.0;
};

struct XMap {
    double x0, x1, t0, t1;
    double operator()(double t) const {
        if (t1 <= t0)
            return x0;
        return x0 + (t - t0) / (t1 - t0) * (x1 - x0);
    }
};

std::string num(double v) { return format_number(v); }

void draw_signal(std::ostream& out, const Trace& trace, const Window& w,
                 const XMap& xm, double top, double height,
                 double (*pick)(const TraceFrame&), const char* label,
                 const char* color) {
    double lo = 0.0, hi = 0.0;
    for (size_t i = w.first; i <= w.last; ++i) {
        const double v = pick(trace.frames[i]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-12) { lo -= 1.0; hi += 1.0; }
    const double pad = 0.05 * (hi - lo);
    lo -= pad; hi += pad;
    auto ym = [&](double v) {
        return top + (hi - v) / (hi - lo) * height;
    };

    out << "<rect x=\"" << num(xm.x0) << "\" y=\"" << num(top) << "\" width=\""
        << num(xm.x1 - xm.x0) << "\" height=\"" << num(height)
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    if (lo < 0.0 && hi > 0.0)
        out << "<line x1=\"" << num(xm.x0) << "\" y1=\"" << num(ym(0.0))
            << "\" x2=\"" << num(xm.x1) << "\" y2=\"" << num(ym(0.0))
            << "\" stroke=\"#eeeeee\"/>\n";
    out << "<text x=\"4\" y=\"" << num(top + 12)
        << "\" font-family=\"monospace\" font-size=\"11\">" << label
        << "</text>\n";
    out << "<text x=\"4\" y=\"" << num(top + 24)
        << "\" font-family=\"monospace\" font-size=\"9\">" << num(hi) << "</text>\n";
    out << "<text x=\"4\" y=\"" << num(top + height - 2)
        << "\" font-family=\"monospace\" font-size=\"9\">" << num(lo) << "</text>\n";

    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1\" points=\"";
    for (size_t i = w.first; i <= w.last; ++i) {
        const TraceFrame& f = trace.frames[i];
        if (i != w.first)
            out << ' ';
        out << num(xm(f.t_ms)) << ',' << num(ym(pick(f)));
    }
    out << "\"/>\n";
}

void draw_raw_band(std::ostream& out, const Trace& trace, const Window& w,
                   const XMap& xm, double top, double height,
                   bool (*pick)(const TraceFrame&), const char* label) {
    out << "<rect x=\"" << num(xm.x0) << "\" y=\"" << num(top) << "\" width=\""
        << num(xm.x1 - xm.x0) << "\" height=\"" << num(height)
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out << "<text x=\"4\" y=\"" << num(top + height / 2 + 4)
        << "\" font-family=\"monospace\" font-size=\"11\">" << label
        << "</text>\n";
    size_t i = w.first;
    while (i <= w.last) {
        if (!pick(trace.frames[i])) { ++i; continue; }
        const size_t run_start = i;
        while (i <= w.last && pick(trace.frames[i]))
            ++i;
        const double xa = xm(trace.frames[run_start].t_ms);
        const double xb = xm(trace.frames[i - 1].t_ms);
        out << "<rect x=\"" << num(xa) << "\" y=\"" << num(top + 3)
            << "\" width=\"" << num(std::max(xb - xa, 1.0)) << "\" height=\""
            << num(height - 6) << "\" fill=\"#888888\"/>\n";
    }
}

} // namespace

void write_trace_svg(std::ostream& out, const Trace& trace,
                     const PlotOptions& options) {
    if (trace.frames.empty())
        throw std::runtime_error("cannot plot an empty trace");

    Window w;
    w.t0 = options.t_start_ms;
    w.t1 = options.t_end_ms < 0.0 ? trace.frames.back().t_ms : options.t_end_ms;
    w.first = trace.frames.size();
    w.last = 0;
    for (size_t i = 0; i < trace.frames.size(); ++i) {
        const double t = trace.frames[i].t_ms;
        if (t >= w.t0 && t <= w.t1) {
            w.first = std::min(w.first, i);
            w.last = std::max(w.last, i);
        }
    }
    if (w.first > w.last)
        throw std::runtime_error("plot window contains no frames");

    const double panel = options.panel_height_px;
    const double band = 26.0;
    const double marker_lane = 44.0;
    const double axis = 26.0;
    const double gap = 6.0;
    const double total_h =
        2 * panel + 2 * band + marker_lane + axis + 6 * gap + 10;
    const XMap xm{60.0, options.width_px - 12.0, w.t0, w.t1};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << options.width_px << "\" height=\"" << num(total_h)
        << "\" viewBox=\"0 0 " << options.width_px << ' ' << num(total_h)
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"60\" y=\"12\" font-family=\"monospace\" font-size=\"12\">"
        << (trace.scenario.empty() ? "trace" : trace.scenario) << "</text>\n";

    double top = 16.0;
    draw_signal(out, trace, w, xm, top, panel,
                [](const TraceFrame& f) { return f.aegm_mv; }, "AEGM mV",
                "#1f77b4");
    top += panel + gap;
    draw_raw_band(out, trace, w, xm, top, band,
                  [](const TraceFrame& f) { return f.as_raw; }, "AS raw");
    top += band + gap;
    draw_signal(out, trace, w, xm, top, panel,
                [](const TraceFrame& f) { return f.vegm_mv; }, "VEGM mV",
                "#d62728");
    top += panel + gap;
    draw_raw_band(out, trace, w, xm, top, band,
                  [](const TraceFrame& f) { return f.vs_raw; }, "VS raw");
    top += band + gap;

    // marker lane: one tick per device annotation, labels on two alternating
    // rows so neighbours stay legible
    out << "<rect x=\"" << num(xm.x0) << "\" y=\"" << num(top) << "\" width=\""
        << num(xm.x1 - xm.x0) << "\" height=\"" << num(marker_lane)
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out << "<text x=\"4\" y=\"" << num(top + marker_lane / 2 + 4)
        << "\" font-family=\"monospace\" font-size=\"11\">marker</text>\n";
    int row = 0;
    for (const DeviceEvent& ev : trace.device_events) {
        if (ev.t_ms < w.t0 || ev.t_ms > w.t1)
            continue;
        const double x = xm(ev.t_ms);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + 2)
            << "\" x2=\"" << num(x) << "\" y2=\"" << num(top + 14)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x - 7) << "\" y=\""
            << num(top + 26 + 12 * (row & 1))
            << "\" font-family=\"monospace\" font-size=\"10\">"
            << marker_label(ev.kind) << "</text>\n";
        ++row;
    }
    top += marker_lane + gap;

    // time axis in seconds
    out << "<line x1=\"" << num(xm.x0) << "\" y1=\"" << num(top) << "\" x2=\""
        << num(xm.x1) << "\" y2=\"" << num(top) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 10; ++i) {
        const double t = w.t0 + (w.t1 - w.t0) * i / 10.0;
        const double x = xm(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\""
            << num(x) << "\" y2=\"" << num(top + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x - 10) << "\" y=\"" << num(top + 17)
            << "\" font-family=\"monospace\" font-size=\"10\">"
            << num(t / 1000.0) << "s</text>\n";
    }
    out << "</svg>\n";
}

void write_trace_svg_file(const std::string& path, const Trace& trace,
                          const PlotOptions& options) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot create output file: " + path);
    write_trace_svg(out, trace, options);
    out.flush();
    if (!out)
        throw std::runtime_error("failed while writing: " + path);
}

} // namespace cardio
