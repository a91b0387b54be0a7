#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sgb/metrics.hpp"
#include "sgb/sparsity.hpp"

namespace sgb {

enum class ExperimentMode : std::uint8_t {
    RetrainDegraded,         // degradation applied to train and test folds
    TrainCleanTestDegraded,  // ablation: degradation on test folds only
};

struct ExperimentSpec {
    Task task = Task::FD;
    int window_length_ms = 20;
    SparsityScenario scenario;
    ExperimentMode mode = ExperimentMode::RetrainDegraded;

    bool operator==(const ExperimentSpec& o) const {
        return task == o.task && window_length_ms == o.window_length_ms &&
               scenario == o.scenario && mode == o.mode;
    }
    std::string describe() const {
        return std::string(task == Task::FD ? "fd" : "fli") + "/w" +
               std::to_string(window_length_ms) + "/" + scenario.to_string();
    }
};

struct ExperimentResult {
    ExperimentSpec spec;
    double f1_mean = 0.0;
    double f1_std = 0.0;
    std::array<double, 5> per_fold_f1{};
    double relative_change_pct = 0.0;
    std::uint64_t n_windows_train = 0;
    std::uint64_t n_windows_test = 0;
    double wall_ms = 0.0;
};

/// The full experiment grid for one dataset: both tasks, the five window
/// lengths, baseline plus every scenario of the study, communication
/// losses only where they fit the window. 270 specs, duplicate-free,
/// deterministic order.
std::vector<ExperimentSpec> enumerate_grid(std::uint32_t base_fs_hz);

} // namespace sgb
