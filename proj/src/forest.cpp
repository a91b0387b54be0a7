#include "sgb/forest.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <future>
#include <limits>
#include <numeric>

#include "sgb/errors.hpp"
#include "sgb/rng.hpp"

namespace sgb {

double gini(const std::vector<std::uint32_t>& class_counts) {
    std::uint64_t n = 0;
    for (std::uint32_t c : class_counts) n += c;
    if (n == 0) throw PreconditionError("gini over all-zero class counts");
    double sumsq = 0.0;
    for (std::uint32_t c : class_counts)
        sumsq += static_cast<double>(c) * static_cast<double>(c);
    const double dn = static_cast<double>(n);
    return 1.0 - sumsq / (dn * dn);
}

int DecisionTree::predict(const float* row) const {
    int i = 0;
    while (!nodes[i].is_leaf())
        i = (static_cast<double>(row[nodes[i].feature]) <= nodes[i].threshold)
                ? nodes[i].left
                : nodes[i].right;
    const auto& counts = nodes[i].class_counts;
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

namespace {

// Monotone mapping from float bits to unsigned keys; -0.0 is normalised
// to +0.0 at gather time so equal values always share one key.
inline std::uint32_t sortable_bits(float v) {
    std::uint32_t u = std::bit_cast<std::uint32_t>(v + 0.0f);
    return (u & 0x80000000u) ? ~u : (u | 0x80000000u);
}

inline float bits_to_float(std::uint32_t key) {
    const std::uint32_t u = (key & 0x80000000u) ? (key & 0x7FFFFFFFu) : ~key;
    return std::bit_cast<float>(u);
}

/// Builds one tree over a class-count problem with column-major features.
class TreeBuilder {
public:
    TreeBuilder(const float* columns, std::size_t n_rows, std::size_t n_features,
                const std::uint8_t* labels, int n_classes, const TrainConfig& cfg,
                std::uint64_t tree_seed)
        : cols_(columns),
          m_(n_rows),
          f_(n_features),
          y_(labels),
          k_(n_classes),
          cfg_(cfg),
          rng_(tree_seed) {
        feat_order_.resize(f_);
        std::iota(feat_order_.begin(), feat_order_.end(), 0);
        keys_.resize(m_);
        scratch_.resize(m_);
        idx_.resize(m_);
        if (cfg_.bootstrap) {
            for (std::size_t i = 0; i < m_; ++i)
                idx_[i] = static_cast<std::uint32_t>(rng_.below(m_));
        } else {
            std::iota(idx_.begin(), idx_.end(), 0u);
        }
    }

    DecisionTree build() {
        DecisionTree tree;
        if (m_ > 0) grow(tree, 0, m_, 0);
        return tree;
    }

private:
    // Packed sort item: value key in bits 8..39, label in bits 0..7.
    static inline std::uint64_t pack(std::uint32_t key, std::uint8_t label) {
        return (static_cast<std::uint64_t>(key) << 8) | label;
    }

    void radix_sort(std::size_t n) {
        std::uint64_t* a = keys_.data();
        std::uint64_t* b = scratch_.data();
        for (int pass = 0; pass < 5; ++pass) {
            const int shift = pass * 8;
            std::uint32_t hist[256] = {0};
            for (std::size_t i = 0; i < n; ++i) ++hist[(a[i] >> shift) & 0xFF];
            if (hist[(a[0] >> shift) & 0xFF] == n) continue; // column constant
            std::uint32_t pos = 0;
            for (int v = 0; v < 256; ++v) {
                const std::uint32_t c = hist[v];
                hist[v] = pos;
                pos += c;
            }
            for (std::size_t i = 0; i < n; ++i) b[hist[(a[i] >> shift) & 0xFF]++] = a[i];
            std::swap(a, b);
        }
        if (a != keys_.data()) std::memcpy(keys_.data(), a, n * sizeof(std::uint64_t));
    }

    struct Split {
        double weighted_gini = std::numeric_limits<double>::infinity();
        std::int32_t feature = -1;
        double threshold = 0.0;
    };

    /// Scans one feature's sorted (value, label) sequence for the best
    /// valid threshold. Candidates sit between consecutive distinct
    /// values; both children must keep min_samples_leaf rows.
    void scan_feature(std::int32_t feature, std::size_t n, Split& best) const {
        const std::uint64_t* a = keys_.data();
        const double dn = static_cast<double>(n);
        std::uint32_t left[8] = {0};
        const std::uint32_t* total = total_counts_;
        double total_sumsq = 0.0;
        for (int c = 0; c < k_; ++c)
            total_sumsq +=
                static_cast<double>(total[c]) * static_cast<double>(total[c]);

        const std::size_t msl = static_cast<std::size_t>(cfg_.min_samples_leaf);
        std::size_t i = 0;
        while (i < n) {
            const std::uint32_t run_key = static_cast<std::uint32_t>(a[i] >> 8);
            std::size_t j = i;
            while (j < n && static_cast<std::uint32_t>(a[j] >> 8) == run_key) {
                ++left[a[j] & 0xFF];
                ++j;
            }
            if (j >= n) break; // last run: no threshold after it
            const std::size_t nl = j;
            const std::size_t nr = n - j;
            if (nl >= msl && nr >= msl) {
                double sl = 0.0, sr = 0.0;
                for (int c = 0; c < k_; ++c) {
                    const double l = static_cast<double>(left[c]);
                    const double r = static_cast<double>(total[c]) - l;
                    sl += l * l;
                    sr += r * r;
                }
                const double dl = static_cast<double>(nl);
                const double dr = static_cast<double>(nr);
                const double gl = 1.0 - sl / (dl * dl);
                const double gr = 1.0 - sr / (dr * dr);
                const double wg = (dl * gl + dr * gr) / dn;
                if (wg < best.weighted_gini) {
                    const double lo = static_cast<double>(bits_to_float(run_key));
                    const double hi = static_cast<double>(
                        bits_to_float(static_cast<std::uint32_t>(a[j] >> 8)));
                    best.weighted_gini = wg;
                    best.feature = feature;
                    best.threshold = (lo + hi) / 2.0;
                }
            }
            i = j;
        }
    }

    std::int32_t grow(DecisionTree& tree, std::size_t begin, std::size_t end,
                      int depth) {
        const std::size_t n = end - begin;
        std::uint32_t counts[8] = {0};
        for (std::size_t i = begin; i < end; ++i) ++counts[y_[idx_[i]]];
        int present = 0;
        for (int c = 0; c < k_; ++c) present += counts[c] > 0;

        const bool depth_capped = cfg_.max_depth > 0 && depth >= cfg_.max_depth;
        const std::size_t msl = static_cast<std::size_t>(cfg_.min_samples_leaf);
        Split best;
        if (present > 1 && !depth_capped && n >= 2 * msl && n >= 2 && f_ > 0) {
            total_counts_ = counts;
            const std::size_t k = std::min(effective_max_features(), f_);
            if (picked_.size() < k) picked_.resize(k);
            // Partial Fisher-Yates picks the candidate set; the swaps are
            // undone afterwards so the pool stays in a canonical order.
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng_.below(f_ - i));
                std::swap(feat_order_[i], feat_order_[j]);
                picked_[i] = j;
            }
            candidates_.assign(feat_order_.begin(),
                               feat_order_.begin() + static_cast<std::ptrdiff_t>(k));
            for (std::size_t i = k; i-- > 0;)
                std::swap(feat_order_[i], feat_order_[picked_[i]]);
            std::sort(candidates_.begin(), candidates_.end());

            for (std::uint32_t feature : candidates_) {
                const float* col = cols_ + static_cast<std::size_t>(feature) * m_;
                for (std::size_t i = begin; i < end; ++i)
                    keys_[i - begin] = pack(sortable_bits(col[idx_[i]]), y_[idx_[i]]);
                radix_sort(n);
                scan_feature(static_cast<std::int32_t>(feature), n, best);
            }
        }

        const std::int32_t node_id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (best.feature < 0) {
            TreeNode& leaf = tree.nodes[node_id];
            leaf.class_counts.assign(counts, counts + k_);
            return node_id;
        }

        const float* col = cols_ + static_cast<std::size_t>(best.feature) * m_;
        auto mid = std::partition(
            idx_.begin() + static_cast<std::ptrdiff_t>(begin),
            idx_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::uint32_t i) {
                return static_cast<double>(col[i]) <= best.threshold;
            });
        const std::size_t split_at =
            static_cast<std::size_t>(mid - idx_.begin());

        tree.nodes[node_id].feature = best.feature;
        tree.nodes[node_id].threshold = best.threshold;
        const std::int32_t l = grow(tree, begin, split_at, depth + 1);
        tree.nodes[node_id].left = l;
        const std::int32_t r = grow(tree, split_at, end, depth + 1);
        tree.nodes[node_id].right = r;
        return node_id;
    }

    std::size_t effective_max_features() const {
        if (cfg_.max_features > 0) return cfg_.max_features;
        const auto s = static_cast<std::size_t>(
            std::floor(std::sqrt(static_cast<double>(f_))));
        return std::max<std::size_t>(1, s);
    }

    const float* cols_;
    std::size_t m_;
    std::size_t f_;
    const std::uint8_t* y_;
    int k_;
    const TrainConfig& cfg_;
    Rng rng_;

    std::vector<std::uint32_t> feat_order_;
    std::vector<std::uint32_t> candidates_;
    std::vector<std::size_t> picked_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint64_t> scratch_;
    std::vector<std::uint32_t> idx_;
    const std::uint32_t* total_counts_ = nullptr;
};

} // namespace

RandomForestModel fit(const DataView& x, const std::vector<std::int32_t>& rows,
                      const std::vector<std::uint8_t>& y, int n_classes,
                      const TrainConfig& cfg, unsigned jobs) {
    if (rows.empty()) throw PreconditionError("fit called with no training rows");
    if (x.rows != y.size())
        throw PreconditionError("feature matrix and label vector sizes differ");
    if (n_classes < 1 || n_classes > 8)
        throw PreconditionError("n_classes out of supported range");
    if (cfg.n_trees < 1) throw PreconditionError("n_trees must be at least 1");
    if (cfg.min_samples_leaf < 1)
        throw PreconditionError("min_samples_leaf must be at least 1");

    const std::size_t m = rows.size();
    const std::size_t f = x.cols;

    // Column-major copy of the training subset: every split scans one
    // feature over the node's rows, so columns must be contiguous.
    // Tiled to keep the transpose from thrashing the cache.
    std::vector<float> columns(f * m);
    std::vector<std::uint8_t> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        labels[i] = y[static_cast<std::size_t>(rows[i])];
        if (labels[i] >= n_classes)
            throw PreconditionError("label outside [0, n_classes)");
    }
    constexpr std::size_t kTile = 64;
    for (std::size_t ib = 0; ib < m; ib += kTile) {
        const std::size_t ie = std::min(m, ib + kTile);
        for (std::size_t jb = 0; jb < f; jb += kTile) {
            const std::size_t je = std::min(f, jb + kTile);
            for (std::size_t i = ib; i < ie; ++i) {
                const float* src = x.row(static_cast<std::size_t>(rows[i]));
                for (std::size_t j = jb; j < je; ++j) columns[j * m + i] = src[j];
            }
        }
    }

    RandomForestModel model;
    model.n_classes = n_classes;
    model.feature_count = f;
    model.train_config = cfg;
    model.trees.resize(static_cast<std::size_t>(cfg.n_trees));

    auto build_tree = [&](int t) {
        TreeBuilder builder(columns.data(), m, f, labels.data(), n_classes, cfg,
                            cfg.seed ^ static_cast<std::uint64_t>(t));
        model.trees[static_cast<std::size_t>(t)] = builder.build();
    };

    if (jobs <= 1) {
        for (int t = 0; t < cfg.n_trees; ++t) build_tree(t);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (int t = next.fetch_add(1); t < cfg.n_trees; t = next.fetch_add(1))
                build_tree(t);
        };
        std::vector<std::future<void>> futs;
        for (unsigned i = 0; i < jobs; ++i)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& fu : futs) fu.get();
    }
    return model;
}

RandomForestModel fit(const DataView& x, const std::vector<std::uint8_t>& y,
                      int n_classes, const TrainConfig& cfg, unsigned jobs) {
    std::vector<std::int32_t> rows(x.rows);
    std::iota(rows.begin(), rows.end(), 0);
    return fit(x, rows, y, n_classes, cfg, jobs);
}

int predict(const RandomForestModel& model, const float* row, std::size_t len) {
    if (len != model.feature_count)
        throw PreconditionError("feature vector length does not match the model");
    std::uint32_t votes[8] = {0};
    for (const DecisionTree& tree : model.trees) ++votes[tree.predict(row)];
    int best = 0;
    for (int c = 1; c < model.n_classes; ++c)
        if (votes[c] > votes[best]) best = c;
    return best;
}

std::vector<std::uint8_t> predict_rows(const RandomForestModel& model,
                                       const DataView& x,
                                       const std::vector<std::int32_t>& rows) {
    std::vector<std::uint8_t> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out[i] = static_cast<std::uint8_t>(
            predict(model, x.row(static_cast<std::size_t>(rows[i])), x.cols));
    return out;
}

} // namespace sgb
