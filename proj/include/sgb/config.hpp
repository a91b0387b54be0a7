#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sgb/experiment.hpp"
#include "sgb/forest.hpp"
#include "sgb/params.hpp"
#include "sgb/preprocess.hpp"

namespace sgb {

struct GenerationConfig {
    std::uint64_t n_records = 400;
    std::uint32_t fs_hz = 2000;
    double fault_fraction = 0.5;
    ParamRanges ranges;
};

struct Seeds {
    std::uint64_t data_seed = 1001;
    std::uint64_t fold_seed = 2002;
    std::uint64_t model_seed = 3003;
    std::uint64_t loss_seed = 4004;
};

struct GridConfig {
    unsigned jobs = 0; // 0 = hardware concurrency
    ExperimentMode mode = ExperimentMode::RetrainDegraded;
    std::vector<std::string> scenario_filter; // empty = every scenario
};

/// Everything a run needs, file-driven; no hidden entropy, all seeds are
/// explicit values.
struct RunConfig {
    GenerationConfig generation;
    WindowingConfig windowing;
    TrainConfig train; // seed is filled from seeds.model_seed
    Seeds seeds;
    GridConfig grid;
    std::string dataset_path;
    std::string output_dir;
};

/// Parses the sectioned key/value config file ([generation], [windowing],
/// [training], [seeds], [grid]); unknown sections or keys are errors.
RunConfig load_config(const std::filesystem::path& path);

/// Serialization of the defaults, handy as a starting config.
std::string default_config_text();

/// True when the scenario matches the filter list (by kind or by full
/// spelling); an empty filter matches everything.
bool scenario_matches_filter(const SparsityScenario& sc,
                             const std::vector<std::string>& filter);

} // namespace sgb
