#pragma once

#include <iosfwd>
#include <string>

#include "cardio/engine.hpp"

namespace cardio {

// Strip-chart rendering of a run: stacked panels for the atrial channel,
// its comparator level, the ventricular channel, its comparator level, and
// a marker lane with the device annotations. Output is plain static SVG
// with no timestamps or randomness, so identical runs produce identical
// bytes.
struct PlotOptions {
    double t_start_ms = 0.0;
    double t_end_ms = -1.0;  // negative = end of trace
    int width_px = 1200;
    int panel_height_px = 110;
};

void write_trace_svg(std::ostream& out, const Trace& trace,
                     const PlotOptions& options);

void write_trace_svg_file(const std::string& path, const Trace& trace,
                          const PlotOptions& options);

} // namespace cardio
