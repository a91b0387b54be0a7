#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sgb/config.hpp"
#include "sgb/errors.hpp"

using namespace sgb;
namespace fs = std::filesystem;

namespace {

fs::path write_tmp(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("default config text parses back to the defaults") {
    const fs::path p = write_tmp("sgb_default.ini", default_config_text());
    const RunConfig cfg = load_config(p);
    CHECK(cfg.generation.n_records == 400);
    CHECK(cfg.generation.fs_hz == 2000);
    CHECK(cfg.generation.fault_fraction == 0.5);
    CHECK(cfg.windowing.window_length_ms == 20);
    CHECK(cfg.windowing.step_ms == 5);
    CHECK(cfg.windowing.trim_margin_ms == 80);
    CHECK(cfg.train.n_trees == 100);
    CHECK(cfg.train.bootstrap == true);
    CHECK(cfg.seeds.data_seed == 1001);
    CHECK(cfg.train.seed == cfg.seeds.model_seed);
    CHECK(cfg.grid.mode == ExperimentMode::RetrainDegraded);
    CHECK(cfg.grid.scenario_filter.empty());
    fs::remove(p);
}

TEST_CASE("overrides, comments and lists parse") {
    const fs::path p = write_tmp("sgb_custom.ini",
                                 "# comment\n"
                                 "[generation]\n"
                                 "n_records = 32   ; trailing note\n"
                                 "fs_hz = 1000\n"
                                 "[training]\n"
                                 "n_trees = 10\n"
                                 "bootstrap = false\n"
                                 "[grid]\n"
                                 "mode = clean-train\n"
                                 "scenarios = none, missing_v, commloss:25\n"
                                 "jobs = 3\n");
    const RunConfig cfg = load_config(p);
    CHECK(cfg.generation.n_records == 32);
    CHECK(cfg.generation.fs_hz == 1000);
    CHECK(cfg.train.n_trees == 10);
    CHECK(cfg.train.bootstrap == false);
    CHECK(cfg.grid.mode == ExperimentMode::TrainCleanTestDegraded);
    CHECK(cfg.grid.jobs == 3);
    REQUIRE(cfg.grid.scenario_filter.size() == 3);
    CHECK(cfg.grid.scenario_filter[1] == "missing_v");
    fs::remove(p);
}

TEST_CASE("unknown keys and malformed content are rejected") {
    CHECK_THROWS_AS(load_config(write_tmp("sgb_bad1.ini", "[generation]\nbogus = 1\n")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_tmp("sgb_bad2.ini", "[nope]\nx = 1\n")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_tmp("sgb_bad3.ini", "loose = 1\n")), ConfigError);
    CHECK_THROWS_AS(load_config(write_tmp("sgb_bad4.ini", "[training]\nn_trees 10\n")),
                    ConfigError);
    CHECK_THROWS_AS(
        load_config(write_tmp("sgb_bad5.ini",
                              "[generation]\nload_magnitude_min = 2\nload_magnitude_max = 1\n")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_tmp("sgb_bad6.ini", "[generation]\nfault_fraction = 1.5\n")),
        ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/sgb.ini"), ConfigError);
}

TEST_CASE("scenario filter matching") {
    const SparsityScenario bus2{ScenarioKind::BusFailure, 2, 0};
    CHECK(scenario_matches_filter(bus2, {}));
    CHECK(scenario_matches_filter(bus2, {"bus:2"}));
    CHECK(scenario_matches_filter(bus2, {"bus"}));
    CHECK(!scenario_matches_filter(bus2, {"bus:1", "missing_v"}));
    const SparsityScenario none{};
    CHECK(scenario_matches_filter(none, {"none"}));
    CHECK(!scenario_matches_filter(none, {"bus"}));
}
