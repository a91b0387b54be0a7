#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sgb/preprocess.hpp"
#include "sgb/waveform.hpp"

namespace sgb {

enum class ScenarioKind : std::uint8_t {
    None,
    MissingVoltage,
    MissingCurrent,
    Downsample,
    BusFailure,
    RelayFailure,
    PhaseFailure,
    CommLoss,
};

/// One degradation applied to measurements before training/evaluation.
/// `param` is kind-specific: target fs in Hz (Downsample), bus id
/// (BusFailure), relay id (RelayFailure), phase ordinal 0-2
/// (PhaseFailure), loss duration in ms (CommLoss). Zero otherwise.
struct SparsityScenario {
    ScenarioKind kind = ScenarioKind::None;
    int param = 0;
    std::uint64_t loss_seed = 0; // CommLoss interval placement stream

    bool operator==(const SparsityScenario& o) const {
        return kind == o.kind && param == o.param;
    }

    /// Spellings used in config files and on the command line: `none`,
    /// `missing_v`, `missing_i`, `downsample:<hz>`, `bus:<1-3>`,
    /// `relay:<1-8>`, `phase:<A|B|C>`, `commloss:<ms>`.
    std::string to_string() const;
    static SparsityScenario parse(const std::string& spelling);
};

/// Channels selected by a zero-fill kind. Throws ConfigError for ids
/// outside the topology.
std::array<bool, kNumChannels> zeroed_channel_mask(ScenarioKind kind, int param);

WaveformRecord apply_channel_zeroing(const WaveformRecord& rec, ScenarioKind kind,
                                     int param);
LabeledWindow apply_channel_zeroing(const LabeledWindow& win, ScenarioKind kind,
                                    int param);

/// Keeps every k-th sample (k = round(base/target), from index 0).
/// Fault metadata stays in time units. Throws ConfigError when the target
/// rate exceeds the base rate.
WaveformRecord apply_downsample(const WaveformRecord& rec, std::uint32_t target_fs_hz);

/// Zeroes one contiguous interval across all 48 channels. The interval
/// start is drawn uniformly from the valid offsets, seeded by
/// loss_seed ^ source_record_id ^ window_index. Throws ApplicabilityError
/// when the loss does not fit strictly inside the window.
LabeledWindow apply_comm_loss(const LabeledWindow& win, int duration_ms,
                              std::uint64_t loss_seed);

/// False only for a communication loss at least as long as the window.
bool applicability(const SparsityScenario& scenario, int window_length_ms);

} // namespace sgb
