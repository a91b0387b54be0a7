// sgbench: synthesize relay waveform datasets, degrade them with sparsity
// scenarios, and benchmark a random-forest detector over the experiment grid.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sgb/config.hpp"
#include "sgb/dataset.hpp"
#include "sgb/dataset_io.hpp"
#include "sgb/errors.hpp"
#include "sgb/reports.hpp"
#include "sgb/runner.hpp"

namespace fs = std::filesystem;
using namespace sgb;

namespace {

unsigned resolve_jobs(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

RunnerConfig make_runner_config(const RunConfig& cfg, unsigned jobs) {
    RunnerConfig rc;
    rc.windowing = cfg.windowing;
    rc.train = cfg.train;
    rc.train.seed = cfg.seeds.model_seed;
    rc.fold_seed = cfg.seeds.fold_seed;
    rc.loss_seed = cfg.seeds.loss_seed;
    rc.jobs = jobs;
    return rc;
}

std::string channel_name(int idx) {
    const ChannelId c = channel_from_index(idx);
    std::string s = "R" + std::to_string(c.relay_id);
    s += c.quantity == Quantity::Current ? ".I" : ".V";
    s += static_cast<char>('A' + static_cast<int>(c.phase));
    return s;
}

double rms(const float* data, std::size_t begin, std::size_t end) {
    if (end <= begin) return 0.0;
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        acc += static_cast<double>(data[i]) * static_cast<double>(data[i]);
    return std::sqrt(acc / static_cast<double>(end - begin));
}

int cmd_simulate(const RunConfig& cfg, const std::string& dataset, unsigned jobs) {
    if (dataset.empty()) throw ConfigError("simulate needs --dataset (or grid.dataset_path)");
    const GenerationConfig& g = cfg.generation;
    const GenerationSummary s = generate_dataset(dataset, g.n_records, cfg.seeds.data_seed,
                                                 g.fs_hz, g.fault_fraction, g.ranges, jobs);
    std::printf("wrote %s: %llu records (%llu fault, fraction %.3f), fs %u Hz, %llu bytes\n",
                dataset.c_str(), static_cast<unsigned long long>(s.n_records),
                static_cast<unsigned long long>(s.n_fault_records),
                static_cast<double>(s.n_fault_records) / static_cast<double>(s.n_records),
                g.fs_hz, static_cast<unsigned long long>(s.bytes_written));
    return 0;
}

void print_result_row(const ExperimentResult& r) {
    std::printf("%-4s window=%2d ms  scenario=%-16s f1=%.4f +- %.4f  change=%+.2f%%  "
                "(train %llu / test %llu windows)\n",
                r.spec.task == Task::FD ? "fd" : "fli", r.spec.window_length_ms,
                r.spec.scenario.to_string().c_str(), r.f1_mean, r.f1_std,
                r.relative_change_pct, static_cast<unsigned long long>(r.n_windows_train),
                static_cast<unsigned long long>(r.n_windows_test));
}

int cmd_run(const RunConfig& cfg, const std::string& dataset, const std::string& task_s,
            int window_ms, const std::string& scenario_s, const std::string& out_dir,
            unsigned jobs) {
    if (dataset.empty()) throw ConfigError("run needs --dataset");
    const Dataset ds = read_dataset(dataset);
    RunnerConfig rc = make_runner_config(cfg, jobs);

    ExperimentSpec spec;
    spec.task = task_s == "fli" ? Task::FLI : Task::FD;
    spec.window_length_ms = window_ms;
    spec.scenario = SparsityScenario::parse(scenario_s);
    spec.scenario.loss_seed = cfg.seeds.loss_seed;
    spec.mode = cfg.grid.mode;

    ExperimentResult result = run_experiment(ds, spec, rc);
    if (spec.scenario.kind != ScenarioKind::None) {
        ExperimentSpec base = spec;
        base.scenario = {};
        const ExperimentResult bres = run_experiment(ds, base, rc);
        result.relative_change_pct = relative_change_pct(result.f1_mean, bres.f1_mean);
    }
    print_result_row(result);

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_results_csv(fs::path(out_dir) / "result.csv", {result});
        std::printf("row written to %s\n", (fs::path(out_dir) / "result.csv").c_str());
    }
    return 0;
}

int cmd_grid(const RunConfig& cfg, const std::string& dataset, const std::string& out_dir,
             unsigned jobs) {
    if (dataset.empty()) throw ConfigError("grid needs --dataset");
    if (out_dir.empty()) throw ConfigError("grid needs --out");
    const Dataset ds = read_dataset(dataset);
    RunnerConfig rc = make_runner_config(cfg, jobs);

    std::vector<ExperimentSpec> specs;
    for (ExperimentSpec spec : enumerate_grid(ds.fs_hz)) {
        if (!scenario_matches_filter(spec.scenario, cfg.grid.scenario_filter)) continue;
        spec.scenario.loss_seed = cfg.seeds.loss_seed;
        spec.mode = cfg.grid.mode;
        specs.push_back(spec);
    }
    std::printf("running %zu experiments over %zu records (%u jobs)\n", specs.size(),
                ds.records.size(), rc.jobs);

    std::size_t done = 0;
    const GridOutcome outcome = run_grid(ds, specs, rc, [&](const ExperimentResult& r) {
        ++done;
        std::printf("[%zu/%zu] ", done, specs.size());
        print_result_row(r);
        std::fflush(stdout);
    });

    fs::create_directories(out_dir);
    write_results_csv(fs::path(out_dir) / "results.csv", outcome.results);
    write_timings_csv(fs::path(out_dir) / "timings.csv", outcome.results);
    write_heatmap_csv(fs::path(out_dir) / "heatmap_fd.csv", outcome.results, Task::FD);
    write_heatmap_csv(fs::path(out_dir) / "heatmap_fli.csv", outcome.results, Task::FLI);
    write_heatmap_svg(fs::path(out_dir) / "heatmap_fd.svg", outcome.results, Task::FD);
    write_heatmap_svg(fs::path(out_dir) / "heatmap_fli.svg", outcome.results, Task::FLI);
    std::printf("results written under %s\n", out_dir.c_str());

    if (!outcome.failures.empty()) {
        std::fprintf(stderr, "%zu experiment(s) failed:\n", outcome.failures.size());
        for (const std::string& f : outcome.failures) std::fprintf(stderr, "  %s\n", f.c_str());
        return 1;
    }
    return 0;
}

int cmd_inspect(const std::string& dataset, std::uint64_t record_id) {
    if (dataset.empty()) throw ConfigError("inspect needs --dataset");
    const Dataset ds = read_dataset(dataset);
    const WaveformRecord* rec = nullptr;
    for (const WaveformRecord& r : ds.records)
        if (r.record_id == record_id) rec = &r;
    if (!rec) throw NotFoundError("record " + std::to_string(record_id) + " not found");

    const ScenarioParams& m = rec->meta;
    std::printf("record %llu: fs %u Hz, %zu samples, duration %.3f s\n",
                static_cast<unsigned long long>(rec->record_id), rec->fs_hz,
                rec->n_samples(), rec->duration_s);
    if (m.has_fault()) {
        std::printf("fault: line %d at position %.3f, start %.4f s, current ratio %.2f, "
                    "dc tau %.3f s, inception %.3f rad\n",
                    m.fault_line, m.fault_position, m.fault_start, m.fault_current_ratio,
                    m.dc_offset_tau, m.fault_inception_angle);
    } else {
        std::printf("fault: none (steady state)\n");
    }
    std::printf("load: magnitude %.3f pu, angle %.4f rad; line lengths %.1f/%.1f/%.1f/%.1f km\n",
                m.load_magnitude, m.load_angle, m.line_lengths_km[0], m.line_lengths_km[1],
                m.line_lengths_km[2], m.line_lengths_km[3]);

    const std::size_t n = rec->n_samples();
    const std::size_t split = m.has_fault()
                                  ? std::min<std::size_t>(
                                        n, static_cast<std::size_t>(
                                               std::ceil(m.fault_start * rec->fs_hz)))
                                  : n / 2;
    std::printf("%-7s %14s %14s %8s\n", "channel", "rms_pre", "rms_post", "ratio");
    for (int c = 0; c < kNumChannels; ++c) {
        const double pre = rms(rec->channel(c), 0, split);
        const double post = rms(rec->channel(c), split, n);
        std::printf("%-7s %14.3f %14.3f %8.3f\n", channel_name(c).c_str(), pre, post,
                    pre > 0.0 ? post / pre : 0.0);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic relay-waveform benchmark: dataset generation, sparsity "
                 "scenarios, random-forest evaluation grid"};
    app.require_subcommand(1);

    std::string config_path, dataset, out_dir, task = "fd", scenario = "none";
    int window_ms = 20;
    unsigned jobs = 0;
    std::uint64_t record_id = 0;

    auto add_common = [&](CLI::App* sub, bool with_out) {
        sub->add_option("--config", config_path, "config file (sectioned key=value)");
        sub->add_option("--dataset", dataset, "dataset file path");
        sub->add_option("--jobs", jobs, "worker threads (0 = auto)");
        if (with_out) sub->add_option("--out", out_dir, "output directory");
    };

    CLI::App* sim = app.add_subcommand("simulate", "generate a waveform dataset");
    add_common(sim, false);

    CLI::App* run = app.add_subcommand("run", "run a single experiment");
    add_common(run, true);
    run->add_option("--task", task, "fd or fli")
        ->check(CLI::IsMember({"fd", "fli"}));
    run->add_option("--window", window_ms, "window length in ms");
    run->add_option("--scenario", scenario,
                    "none | missing_v | missing_i | downsample:<hz> | bus:<1-3> | "
                    "relay:<1-8> | phase:<A|B|C> | commloss:<ms>");

    CLI::App* grid = app.add_subcommand("grid", "run the full experiment grid");
    add_common(grid, true);

    CLI::App* inspect = app.add_subcommand("inspect", "summarize one record");
    add_common(inspect, false);
    inspect->add_option("record_id", record_id, "record id to inspect")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (dataset.empty()) dataset = cfg.dataset_path;
        if (out_dir.empty()) out_dir = cfg.output_dir;
        const unsigned effective_jobs = resolve_jobs(jobs ? jobs : cfg.grid.jobs);

        if (sim->parsed()) return cmd_simulate(cfg, dataset, effective_jobs);
        if (run->parsed())
            return cmd_run(cfg, dataset, task, window_ms, scenario, out_dir, effective_jobs);
        if (grid->parsed()) return cmd_grid(cfg, dataset, out_dir, effective_jobs);
        if (inspect->parsed()) return cmd_inspect(dataset, record_id);
    } catch (const ApplicabilityError& e) {
        std::fprintf(stderr, "inapplicable: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
