#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sgb {

struct TrainConfig {
    int n_trees = 100;
    std::size_t max_features = 0; // 0 = floor(sqrt(feature_count)), at least 1
    int min_samples_leaf = 1;
    int max_depth = 0;            // 0 = unlimited
    bool bootstrap = true;
    std::uint64_t seed = 0;
};

/// Row-major feature matrix view (rows x cols, float32).
struct DataView {
    const float* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    const float* row(std::size_t i) const { return data + i * cols; }
};

struct TreeNode {
    std::int32_t feature = -1; // -1 marks a leaf
    double threshold = 0.0;    // x <= threshold descends left
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::vector<std::uint32_t> class_counts; // populated on leaves
    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // pre-order, root at index 0

    /// Leaf class for one row: argmax of leaf counts, ties to the lowest
    /// class id.
    int predict(const float* row) const;
};

struct RandomForestModel {
    std::vector<DecisionTree> trees;
    int n_classes = 0;
    std::size_t feature_count = 0;
    TrainConfig train_config;
};

/// CART impurity 1 - sum((c_i/n)^2). Throws PreconditionError when all
/// counts are zero.
double gini(const std::vector<std::uint32_t>& class_counts);

/// Trains a seeded, fully deterministic forest on the selected rows.
///
/// Per tree (seed = cfg.seed ^ tree_index): a bootstrap resample of the
/// row set (or the identity when bootstrap is off), then recursive
/// splitting. Each split examines max_features candidate features drawn
/// without replacement; thresholds are midpoints between consecutive
/// distinct values; the winner minimizes weighted child Gini with ties
/// going to the lowest feature index, then the lowest threshold. A node
/// with no valid split among its candidates becomes a leaf.
RandomForestModel fit(const DataView& x, const std::vector<std::int32_t>& rows,
                      const std::vector<std::uint8_t>& y, int n_classes,
                      const TrainConfig& cfg, unsigned jobs = 1);

/// Convenience overload over all rows of `x`.
RandomForestModel fit(const DataView& x, const std::vector<std::uint8_t>& y,
                      int n_classes, const TrainConfig& cfg, unsigned jobs = 1);

/// Majority vote over per-tree leaf classes, ties to the lowest class id.
/// Throws PreconditionError when the row width differs from the model.
int predict(const RandomForestModel& model, const float* row, std::size_t len);

std::vector<std::uint8_t> predict_rows(const RandomForestModel& model,
                                       const DataView& x,
                                       const std::vector<std::int32_t>& rows);

void save_model(const std::filesystem::path& path, const RandomForestModel& model);
RandomForestModel load_model(const std::filesystem::path& path);

} // namespace sgb
