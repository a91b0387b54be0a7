#include <doctest.h>

#include <array>

#include "sgb/errors.hpp"
#include "sgb/params.hpp"

using namespace sgb;

TEST_CASE("identical seeds yield identical params") {
    const ParamRanges ranges;
    CHECK(randomize_params(7, ranges) == randomize_params(7, ranges));
    CHECK(randomize_params(7, ranges, false) == randomize_params(7, ranges, false));
}

TEST_CASE("degenerate ranges pin every configurable field") {
    ParamRanges r;
    r.fault_current_ratio_min = r.fault_current_ratio_max = 6.0;
    r.dc_offset_tau_min = r.dc_offset_tau_max = 0.05;
    r.load_magnitude_min = r.load_magnitude_max = 1.0;
    r.line_length_min_km = r.line_length_max_km = 100.0;
    for (std::uint64_t seed : {1ull, 99ull, 12345ull}) {
        const ScenarioParams p = randomize_params(seed, r);
        CHECK(p.fault_current_ratio == 6.0);
        CHECK(p.dc_offset_tau == 0.05);
        CHECK(p.load_magnitude == 1.0);
        for (double len : p.line_lengths_km) CHECK(len == 100.0);
    }
}

TEST_CASE("fault line draw is roughly uniform over 1000 seeds") {
    const ParamRanges ranges;
    std::array<int, 5> counts{};
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        ++counts[static_cast<std::size_t>(randomize_params(seed, ranges).fault_line)];
    CHECK(counts[0] == 0);
    for (int line = 1; line <= 4; ++line) {
        CHECK(counts[static_cast<std::size_t>(line)] >= 200);
        CHECK(counts[static_cast<std::size_t>(line)] <= 300);
    }
}

TEST_CASE("all randomized fields stay inside their ranges") {
    const ParamRanges r;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ScenarioParams p = randomize_params(seed, r);
        CHECK(p.fault_line >= 1);
        CHECK(p.fault_line <= 4);
        CHECK(p.fault_position >= 0.0);
        CHECK(p.fault_position <= 1.0);
        CHECK(p.fault_start >= 0.3);
        CHECK(p.fault_start <= 0.7);
        CHECK(p.fault_current_ratio >= r.fault_current_ratio_min);
        CHECK(p.fault_current_ratio <= r.fault_current_ratio_max);
        CHECK(p.dc_offset_tau >= r.dc_offset_tau_min);
        CHECK(p.dc_offset_tau <= r.dc_offset_tau_max);
        CHECK(p.load_magnitude >= r.load_magnitude_min);
        CHECK(p.load_magnitude <= r.load_magnitude_max);
        for (double len : p.line_lengths_km) {
            CHECK(len >= r.line_length_min_km);
            CHECK(len <= r.line_length_max_km);
        }
        CHECK(p.system_frequency == 50.0);
    }
}

TEST_CASE("no-fault draw shares the steady-state parameters") {
    const ParamRanges ranges;
    const ScenarioParams with = randomize_params(42, ranges, true);
    const ScenarioParams without = randomize_params(42, ranges, false);
    CHECK(without.fault_line == 0);
    CHECK(without.has_fault() == false);
    CHECK(with.load_angle == without.load_angle);
    CHECK(with.load_magnitude == without.load_magnitude);
    CHECK(with.line_lengths_km == without.line_lengths_km);
}

TEST_CASE("malformed range is a configuration error") {
    ParamRanges r;
    r.load_magnitude_min = 2.0;
    r.load_magnitude_max = 1.0;
    CHECK_THROWS_AS(randomize_params(1, r), ConfigError);
}
