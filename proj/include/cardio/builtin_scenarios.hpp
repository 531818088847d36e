#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cardio {

// Ready-made scenario texts covering the four canonical behaviours:
//   segment_a  - clean tracking: every beat sensed once, no pacing
//   segment_b  - unipolar atrium exposes the far-field R wave
//   segment_c  - atrial-pace crosstalk on the ventricular channel
//   segment_d  - slowed atrial conduction double-counts the P wave
// "baseline" is an alias for segment_a.
std::vector<std::string> builtin_scenario_names();
std::optional<std::string> builtin_scenario_text(const std::string& name);

} // namespace cardio
