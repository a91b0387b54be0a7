#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sgb/experiment.hpp"

namespace sgb {

/// One deterministic CSV row per experiment:
/// task,window_ms,scenario,param,f1_mean,f1_std,change_pct,n_windows_train,n_windows_test
/// Wall-clock timings go to a separate sidecar (write_timings_csv) so the
/// results table is byte-stable across reruns.
std::string results_csv(const std::vector<ExperimentResult>& results);
void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results);

void write_timings_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results);

/// Rectangular comm-loss matrix for one task: rows = window lengths,
/// columns = loss durations, empty cells where the loss does not fit the
/// window.
std::string heatmap_csv(const std::vector<ExperimentResult>& results, Task task);
void write_heatmap_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results, Task task);

/// Self-contained SVG rendering of the comm-loss heatmap with a fixed
/// linear color ramp over F1 0.3..1.0.
void write_heatmap_svg(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results, Task task);

} // namespace sgb
