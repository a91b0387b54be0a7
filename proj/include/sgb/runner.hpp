#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sgb/dataset.hpp"
#include "sgb/experiment.hpp"
#include "sgb/folds.hpp"
#include "sgb/forest.hpp"
#include "sgb/preprocess.hpp"

namespace sgb {

struct RunnerConfig {
    WindowingConfig windowing; // window_length_ms is taken from the spec
    TrainConfig train;
    std::uint64_t fold_seed = 0;
    std::uint64_t loss_seed = 0;
    unsigned jobs = 1;
    int n_folds = 5;
};

/// Flattened windows of one experiment, rows aligned with `labels`.
struct WindowSet {
    std::size_t n = 0;
    std::size_t f = 0;
    std::vector<float> x; // n rows by f columns
    std::vector<std::uint8_t> y;
    std::vector<std::uint64_t> record_of;

    DataView view() const { return {x.data(), n, f}; }
};

/// Builds the feature table for a spec: record-level degradation,
/// trimming, windowing, labeling, the fault-window filter for FLI, and
/// per-window communication loss. With degrade=false the scenario is
/// skipped (clean side of the ablation mode) while geometry and labels
/// stay identical.
WindowSet build_window_set(const Dataset& ds, const ExperimentSpec& spec,
                           const RunnerConfig& cfg, bool degrade = true);

/// The fold assignment an experiment will use (exposed for leakage audits).
FoldAssignment experiment_folds(const Dataset& ds, const ExperimentSpec& spec,
                                const RunnerConfig& cfg);

/// Full pipeline for one spec: window set, grouped 5-fold CV, one forest
/// per fold, per-fold F1, mean/std. relative_change_pct is left at zero;
/// run_grid (or the caller) fills it against the matching baseline.
ExperimentResult run_experiment(const Dataset& ds, const ExperimentSpec& spec,
                                const RunnerConfig& cfg);

struct GridOutcome {
    std::vector<ExperimentResult> results; // enumeration order
    std::vector<std::string> failures;     // "spec: message" per failed experiment
};

/// Runs every spec (worker pool of cfg.jobs), then fills each result's
/// change percentage from the scenario-free baseline of its (task,
/// window) pair. Results come back in spec order regardless of scheduling.
GridOutcome run_grid(const Dataset& ds, const std::vector<ExperimentSpec>& specs,
                     const RunnerConfig& cfg,
                     const std::function<void(const ExperimentResult&)>& progress = {});

} // namespace sgb
