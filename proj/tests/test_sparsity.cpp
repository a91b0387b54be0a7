#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "sgb/errors.hpp"
#include "sgb/experiment.hpp"
#include "sgb/rng.hpp"
#include "sgb/sparsity.hpp"

using namespace sgb;
using sgb::testing::make_patterned_record;

namespace {

int count_zero_channels(const WaveformRecord& rec) {
    int zeroed = 0;
    for (int c = 0; c < kNumChannels; ++c) {
        bool all_zero = true;
        for (std::size_t i = 0; i < rec.n_samples(); ++i)
            if (rec.channel(c)[i] != 0.0f) { all_zero = false; break; }
        zeroed += all_zero;
    }
    return zeroed;
}

} // namespace

TEST_CASE("bus 2 failure silences relays 2, 4, 5, 7") {
    const WaveformRecord rec = make_patterned_record(1000, 0.2);
    const WaveformRecord out = apply_channel_zeroing(rec, ScenarioKind::BusFailure, 2);
    CHECK(count_zero_channels(out) == 24);
    for (int relay : {2, 4, 5, 7})
        for (Quantity q : {Quantity::Current, Quantity::Voltage})
            for (Phase p : {Phase::A, Phase::B, Phase::C}) {
                const int ci = channel_index({relay, q, p});
                for (std::size_t i = 0; i < out.n_samples(); ++i)
                    CHECK(out.channel(ci)[i] == 0.0f);
            }
    for (int relay : {1, 3, 6, 8}) {
        const int ci = channel_index({relay, Quantity::Current, Phase::A});
        CHECK(out.channel(ci)[0] == rec.channel(ci)[0]);
    }
}

TEST_CASE("phase A failure zeroes exactly 16 channels") {
    const WaveformRecord rec = make_patterned_record(1000, 0.2);
    const WaveformRecord out = apply_channel_zeroing(rec, ScenarioKind::PhaseFailure, 0);
    CHECK(count_zero_channels(out) == 16);
}

TEST_CASE("missing voltage plus missing current silences everything") {
    const WaveformRecord rec = make_patterned_record(1000, 0.2);
    const WaveformRecord out = apply_channel_zeroing(
        apply_channel_zeroing(rec, ScenarioKind::MissingVoltage, 0),
        ScenarioKind::MissingCurrent, 0);
    CHECK(count_zero_channels(out) == 48);
}

TEST_CASE("zeroing leaves non-selected channels bit-identical and is idempotent") {
    const WaveformRecord rec = make_patterned_record(2000, 0.3);
    const WaveformRecord once = apply_channel_zeroing(rec, ScenarioKind::RelayFailure, 6);
    const WaveformRecord twice =
        apply_channel_zeroing(once, ScenarioKind::RelayFailure, 6);
    CHECK(once.samples == twice.samples);
    const auto mask = zeroed_channel_mask(ScenarioKind::RelayFailure, 6);
    for (int c = 0; c < kNumChannels; ++c) {
        if (mask[c]) continue;
        for (std::size_t i = 0; i < rec.n_samples(); ++i)
            CHECK(once.channel(c)[i] == rec.channel(c)[i]);
    }
}

TEST_CASE("zeroing rejects unknown component ids") {
    const WaveformRecord rec = make_patterned_record(1000, 0.1);
    CHECK_THROWS_AS(apply_channel_zeroing(rec, ScenarioKind::BusFailure, 4), ConfigError);
    CHECK_THROWS_AS(apply_channel_zeroing(rec, ScenarioKind::RelayFailure, 0), ConfigError);
    CHECK_THROWS_AS(apply_channel_zeroing(rec, ScenarioKind::PhaseFailure, 3), ConfigError);
}

TEST_CASE("downsampling keeps every k-th sample") {
    const WaveformRecord rec = make_patterned_record(20000, 0.16);
    CHECK(rec.n_samples() == 3200);
    const WaveformRecord out = apply_downsample(rec, 400);
    CHECK(out.fs_hz == 400);
    CHECK(out.n_samples() == 64);
    for (int c = 0; c < kNumChannels; ++c)
        for (std::size_t i = 0; i < 64; ++i)
            CHECK(out.channel(c)[i] == rec.channel(c)[i * 50]);

    const WaveformRecord half = apply_downsample(rec, 10000);
    CHECK(half.n_samples() == 1600);
    CHECK(half.channel(3)[1] == rec.channel(3)[2]);
}

TEST_CASE("downsampling to the base rate is the identity") {
    const WaveformRecord rec = make_patterned_record(2000, 0.5, 2, 0.3);
    const WaveformRecord out = apply_downsample(rec, 2000);
    CHECK(out.samples == rec.samples);
    CHECK(out.fs_hz == rec.fs_hz);
}

TEST_CASE("downsampling composes and preserves metadata") {
    const WaveformRecord rec = make_patterned_record(2000, 0.5, 2, 0.3);
    const WaveformRecord direct = apply_downsample(rec, 200);
    const WaveformRecord staged = apply_downsample(apply_downsample(rec, 1000), 200);
    CHECK(direct.samples == staged.samples);
    CHECK(direct.meta.fault_start == rec.meta.fault_start);
    CHECK(direct.meta.fault_line == rec.meta.fault_line);
    CHECK_THROWS_AS(apply_downsample(direct, 2000), ConfigError);
}

namespace {

LabeledWindow make_window(int window_ms, std::uint32_t fs, std::uint64_t record_id,
                          int index) {
    LabeledWindow w;
    w.window_length_ms = window_ms;
    w.fs_hz = fs;
    w.samples_per_channel = window_sample_count(window_ms, fs);
    w.source_record_id = record_id;
    w.window_index = index;
    w.fd_label = true;
    w.fli_label = 3;
    w.features.resize(static_cast<std::size_t>(kNumChannels) * w.samples_per_channel);
    for (std::size_t i = 0; i < w.features.size(); ++i)
        w.features[i] = static_cast<float>(i % 97 + 1);
    return w;
}

} // namespace

TEST_CASE("communication loss zeroes one interval across all channels") {
    const LabeledWindow w = make_window(50, 2000, 12, 3);
    const LabeledWindow out = apply_comm_loss(w, 45, 777);
    CHECK(out.fd_label == w.fd_label);
    CHECK(out.fli_label == w.fli_label);

    const int wlen = w.samples_per_channel;
    int zero_start = -1, zero_len = 0;
    for (int t = 0; t < wlen; ++t) {
        const bool zero = out.channel(0)[t] == 0.0f;
        if (zero && zero_start < 0) zero_start = t;
        zero_len += zero;
    }
    CHECK(zero_len == 90); // 45 of 50 ms -> 90% of 100 samples
    for (int c = 0; c < kNumChannels; ++c) {
        for (int t = 0; t < wlen; ++t) {
            const bool in_gap = t >= zero_start && t < zero_start + zero_len;
            if (in_gap)
                CHECK(out.channel(c)[t] == 0.0f);
            else
                CHECK(out.channel(c)[t] == w.channel(c)[t]);
        }
    }
}

TEST_CASE("communication loss ratios and determinism") {
    const LabeledWindow w = make_window(10, 2000, 5, 0);
    const LabeledWindow out = apply_comm_loss(w, 5, 1);
    int zeros = 0;
    for (int t = 0; t < w.samples_per_channel; ++t) zeros += out.channel(7)[t] == 0.0f;
    CHECK(zeros == 10); // 5 of 10 ms -> half of 20 samples

    const LabeledWindow again = apply_comm_loss(w, 5, 1);
    CHECK(out.features == again.features);
    // A different stream may move the interval, never its length.
    const LabeledWindow moved = apply_comm_loss(w, 5, 2);
    int zeros_moved = 0;
    for (int t = 0; t < w.samples_per_channel; ++t)
        zeros_moved += moved.channel(7)[t] == 0.0f;
    CHECK(zeros_moved == 10);
}

TEST_CASE("communication loss must fit strictly inside the window") {
    const LabeledWindow w = make_window(40, 2000, 5, 0);
    CHECK_THROWS_AS(apply_comm_loss(w, 40, 1), ApplicabilityError);
    CHECK_THROWS_AS(apply_comm_loss(w, 45, 1), ApplicabilityError);
    CHECK_NOTHROW(apply_comm_loss(w, 35, 1));
}

TEST_CASE("applicability rule") {
    CHECK(!applicability({ScenarioKind::CommLoss, 45, 0}, 40));
    CHECK(!applicability({ScenarioKind::CommLoss, 40, 0}, 40));
    CHECK(applicability({ScenarioKind::CommLoss, 5, 0}, 10));
    CHECK(applicability({ScenarioKind::MissingVoltage, 0, 0}, 10));
    CHECK(applicability({ScenarioKind::Downsample, 40, 0}, 10));
}

TEST_CASE("scenario spellings round-trip") {
    for (const char* s : {"none", "missing_v", "missing_i", "downsample:400", "bus:2",
                          "relay:7", "phase:B", "commloss:25"}) {
        CHECK(SparsityScenario::parse(s).to_string() == s);
    }
    CHECK_THROWS_AS(SparsityScenario::parse("bogus"), ConfigError);
    CHECK_THROWS_AS(SparsityScenario::parse("phase:D"), ConfigError);
    CHECK_THROWS_AS(SparsityScenario::parse("downsample:x"), ConfigError);
}

TEST_CASE("grid enumeration counts") {
    const auto grid = enumerate_grid(2000);
    CHECK(grid.size() == 270);

    int comm = 0;
    std::set<std::string> unique;
    for (const ExperimentSpec& spec : grid) {
        unique.insert(spec.describe());
        comm += spec.scenario.kind == ScenarioKind::CommLoss;
        CHECK(applicability(spec.scenario, spec.window_length_ms));
    }
    CHECK(comm == 50);
    CHECK(unique.size() == 270);

    // 22 non-comm-loss scenarios (baseline included) per task and window.
    int fd20_non_comm = 0;
    for (const ExperimentSpec& spec : grid)
        if (spec.task == Task::FD && spec.window_length_ms == 20 &&
            spec.scenario.kind != ScenarioKind::CommLoss)
            ++fd20_non_comm;
    CHECK(fd20_non_comm == 22);

    CHECK(enumerate_grid(2000) == grid); // deterministic
    // Downsample targets follow the base rate.
    const auto at20k = enumerate_grid(20000);
    std::set<int> targets;
    for (const ExperimentSpec& spec : at20k)
        if (spec.scenario.kind == ScenarioKind::Downsample)
            targets.insert(spec.scenario.param);
    CHECK(targets == std::set<int>{10000, 4000, 2000, 800, 400});
}

TEST_CASE("injector algebra over randomized cases") {
    Rng rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        const std::uint32_t fs = rng.below(2) ? 2000 : 1000;
        const WaveformRecord rec =
            make_patterned_record(fs, 0.2, 1 + static_cast<int>(rng.below(4)), 0.1,
                                  rng.next());

        const ScenarioKind kinds[] = {ScenarioKind::MissingVoltage,
                                      ScenarioKind::MissingCurrent,
                                      ScenarioKind::BusFailure, ScenarioKind::RelayFailure,
                                      ScenarioKind::PhaseFailure};
        const ScenarioKind kind = kinds[rng.below(5)];
        int param = 0;
        if (kind == ScenarioKind::BusFailure) param = 1 + static_cast<int>(rng.below(3));
        if (kind == ScenarioKind::RelayFailure) param = 1 + static_cast<int>(rng.below(8));
        if (kind == ScenarioKind::PhaseFailure) param = static_cast<int>(rng.below(3));

        // Idempotence.
        const WaveformRecord once = apply_channel_zeroing(rec, kind, param);
        CHECK(apply_channel_zeroing(once, kind, param).samples == once.samples);

        // Zero-fill applications commute.
        const ScenarioKind kind2 = kinds[rng.below(5)];
        int param2 = 0;
        if (kind2 == ScenarioKind::BusFailure) param2 = 1 + static_cast<int>(rng.below(3));
        if (kind2 == ScenarioKind::RelayFailure) param2 = 1 + static_cast<int>(rng.below(8));
        if (kind2 == ScenarioKind::PhaseFailure) param2 = static_cast<int>(rng.below(3));
        const WaveformRecord ab =
            apply_channel_zeroing(apply_channel_zeroing(rec, kind, param), kind2, param2);
        const WaveformRecord ba =
            apply_channel_zeroing(apply_channel_zeroing(rec, kind2, param2), kind, param);
        CHECK(ab.samples == ba.samples);

        // Identity downsample; labels preserved by all record injectors.
        CHECK(apply_downsample(rec, fs).samples == rec.samples);
        CHECK(once.meta.fault_line == rec.meta.fault_line);
        const WaveformRecord ds = apply_downsample(rec, fs / 2);
        CHECK(ds.meta.fault_line == rec.meta.fault_line);
        CHECK(ds.meta.fault_start == rec.meta.fault_start);
    }
}
