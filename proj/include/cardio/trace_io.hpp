#pragma once

#include <iosfwd>
#include <string>

#include "cardio/engine.hpp"

namespace cardio {

// Shortest round-trippable-enough rendering used by the CSV and SVG
// writers: six significant digits, no locale, "-0" folded to "0". Keeping
// every number on this one formatter is what makes re-runs byte-identical.
std::string format_number(double v);

// The fixed CSV column row shared by the writer and the reader.
const char* trace_csv_header();

// One row per frame under a fixed header:
//   t_ms,aegm_mv,vegm_mv,as_raw,vs_raw,v_adt,v_adr,v_vdt,v_vdr,v_vrt,v_vrr,
//   v_apa,v_vpa,marker
// Booleans are 0/1; marker is empty or '+'-joined labels (e.g. "AS+VP").
void write_trace_csv(std::ostream& out, const Trace& trace);

// Same, to a file. Throws std::runtime_error when the file cannot be
// created or the final flush fails.
void write_trace_csv_file(const std::string& path, const Trace& trace);

// Parses a CSV produced by write_trace_csv back into a trace: frames, raw
// bands and device markers round-trip; conduction-level detail does not
// (the CSV never carried it). Throws std::runtime_error on empty input,
// a foreign header, or a malformed row.
Trace read_trace_csv(std::istream& in);
Trace read_trace_csv_file(const std::string& path);

} // namespace cardio
