#include "sgb/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <mutex>

#include "sgb/errors.hpp"
#include "sgb/metrics.hpp"
#include "sgb/rng.hpp"
#include "sgb/sparsity.hpp"

namespace sgb {

namespace {

bool is_record_level_zeroing(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::MissingVoltage:
        case ScenarioKind::MissingCurrent:
        case ScenarioKind::BusFailure:
        case ScenarioKind::RelayFailure:
        case ScenarioKind::PhaseFailure:
            return true;
        default:
            return false;
    }
}

std::uint64_t fold_model_seed(std::uint64_t base, int fold) {
    return mix64(base ^ (0xF01DULL + static_cast<std::uint64_t>(fold)));
}

} // namespace

WindowSet build_window_set(const Dataset& ds, const ExperimentSpec& spec,
                           const RunnerConfig& cfg, bool degrade) {
    if (!applicability(spec.scenario, spec.window_length_ms))
        throw ApplicabilityError(
            "scenario " + spec.scenario.to_string() + " does not apply to a " +
            std::to_string(spec.window_length_ms) +
            " ms window: a communication loss must be shorter than the window");

    WindowingConfig wcfg = cfg.windowing;
    wcfg.window_length_ms = spec.window_length_ms;
    wcfg.validate();

    const SparsityScenario& sc = spec.scenario;
    WindowSet out;
    for (const WaveformRecord& original : ds.records) {
        const WaveformRecord* rec = &original;
        WaveformRecord transformed;
        if (degrade && is_record_level_zeroing(sc.kind)) {
            transformed = apply_channel_zeroing(original, sc.kind, sc.param);
            rec = &transformed;
        } else if (degrade && sc.kind == ScenarioKind::Downsample) {
            transformed = apply_downsample(original, static_cast<std::uint32_t>(sc.param));
            rec = &transformed;
        }

        const WaveformRecord trimmed = trim(*rec, wcfg);
        std::vector<LabeledWindow> wins = slide_windows(trimmed, wcfg);
        for (LabeledWindow& w : wins) {
            if (spec.task == Task::FLI && !w.fd_label) continue;
            if (degrade && sc.kind == ScenarioKind::CommLoss)
                w = apply_comm_loss(w, sc.param, cfg.loss_seed);

            if (out.n == 0) out.f = w.features.size();
            if (w.features.size() != out.f)
                throw PreconditionError("inconsistent feature width across windows");
            out.x.insert(out.x.end(), w.features.begin(), w.features.end());
            out.y.push_back(spec.task == Task::FD
                                ? static_cast<std::uint8_t>(w.fd_label ? 1 : 0)
                                : static_cast<std::uint8_t>(w.fli_label - 1));
            out.record_of.push_back(w.source_record_id);
            ++out.n;
        }
    }
    if (out.n == 0)
        throw PreconditionError(
            spec.task == Task::FLI
                ? "dataset contains no fault windows for the FLI task"
                : "dataset produced no windows");
    return out;
}

FoldAssignment experiment_folds(const Dataset& ds, const ExperimentSpec& spec,
                                const RunnerConfig& cfg) {
    // Fold grouping depends only on which records contribute windows.
    std::vector<std::uint64_t> ids;
    for (const WaveformRecord& rec : ds.records) {
        if (spec.task == Task::FLI && !rec.meta.has_fault()) continue;
        ids.push_back(rec.record_id);
    }
    return assign_folds(std::move(ids), cfg.n_folds, cfg.fold_seed);
}

ExperimentResult run_experiment(const Dataset& ds, const ExperimentSpec& spec,
                                const RunnerConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();

    const bool ablation = spec.mode == ExperimentMode::TrainCleanTestDegraded &&
                          spec.scenario.kind != ScenarioKind::None &&
                          spec.scenario.kind != ScenarioKind::Downsample;
    const WindowSet degraded = build_window_set(ds, spec, cfg, true);
    WindowSet clean;
    if (ablation) {
        clean = build_window_set(ds, spec, cfg, false);
        if (clean.n != degraded.n)
            throw PreconditionError("ablation window sets diverged");
    }
    const WindowSet& train_set = ablation ? clean : degraded;

    const int n_classes = spec.task == Task::FD ? 2 : 4;
    const FoldAssignment folds = experiment_folds(ds, spec, cfg);

    ExperimentResult res;
    res.spec = spec;
    res.n_windows_test = degraded.n;

    std::uint64_t train_total = 0;
    double sum = 0.0, sumsq = 0.0;
    for (int fold = 0; fold < cfg.n_folds; ++fold) {
        std::vector<std::int32_t> train_rows, test_rows;
        for (std::size_t i = 0; i < degraded.n; ++i) {
            const int g = folds.fold_of(degraded.record_of[i]);
            (g == fold ? test_rows : train_rows).push_back(static_cast<std::int32_t>(i));
        }
        if (train_rows.empty() || test_rows.empty())
            throw PreconditionError("a fold ended up without train or test windows");
        train_total += train_rows.size();

        TrainConfig tc = cfg.train;
        tc.seed = fold_model_seed(cfg.train.seed, fold);
        const RandomForestModel model =
            fit(train_set.view(), train_rows, train_set.y, n_classes, tc, cfg.jobs);

        ConfusionMatrix cm(n_classes);
        for (std::int32_t row : test_rows) {
            const int pred = predict(model, degraded.view().row(static_cast<std::size_t>(row)),
                                     degraded.f);
            ++cm.at(degraded.y[static_cast<std::size_t>(row)], pred);
        }
        const double f1 = f1_score(cm, spec.task);
        res.per_fold_f1[static_cast<std::size_t>(fold)] = f1;
        sum += f1;
        sumsq += f1 * f1;
    }

    const double k = static_cast<double>(cfg.n_folds);
    res.f1_mean = sum / k;
    res.f1_std = std::sqrt(std::max(0.0, sumsq / k - res.f1_mean * res.f1_mean));
    res.n_windows_train = train_total / static_cast<std::uint64_t>(cfg.n_folds);
    res.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    return res;
}

GridOutcome run_grid(const Dataset& ds, const std::vector<ExperimentSpec>& specs,
                     const RunnerConfig& cfg,
                     const std::function<void(const ExperimentResult&)>& progress) {
    GridOutcome out;
    out.results.resize(specs.size());
    std::vector<char> ok(specs.size(), 0);
    std::vector<std::string> errors(specs.size());

    // Experiments are independent; forests stay single-threaded inside a
    // pooled run so the pool is the only parallelism.
    RunnerConfig job_cfg = cfg;
    const unsigned pool = std::max(1u, cfg.jobs);
    job_cfg.jobs = 1;

    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < specs.size();
             i = next.fetch_add(1)) {
            try {
                out.results[i] = run_experiment(ds, specs[i], job_cfg);
                ok[i] = 1;
                if (progress) {
                    std::lock_guard<std::mutex> lock(progress_mutex);
                    progress(out.results[i]);
                }
            } catch (const std::exception& e) {
                errors[i] = specs[i].describe() + ": " + e.what();
            }
        }
    };

    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::future<void>> futs;
        for (unsigned i = 0; i < pool; ++i)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    for (std::size_t i = 0; i < specs.size(); ++i)
        if (!ok[i] && !errors[i].empty()) out.failures.push_back(errors[i]);

    // Baseline-relative change within each (task, window) pair.
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (!ok[i]) continue;
        if (specs[i].scenario.kind == ScenarioKind::None) {
            out.results[i].relative_change_pct = 0.0;
            continue;
        }
        for (std::size_t b = 0; b < specs.size(); ++b) {
            if (!ok[b] || specs[b].scenario.kind != ScenarioKind::None) continue;
            if (specs[b].task != specs[i].task ||
                specs[b].window_length_ms != specs[i].window_length_ms)
                continue;
            out.results[i].relative_change_pct =
                relative_change_pct(out.results[i].f1_mean, out.results[b].f1_mean);
            break;
        }
    }
    return out;
}

} // namespace sgb
