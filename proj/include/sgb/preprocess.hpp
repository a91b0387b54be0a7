#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sgb/waveform.hpp"

namespace sgb {

struct WindowingConfig {
    int window_length_ms = 20;
    int step_ms = 5;
    int trim_margin_ms = 80;

    /// Invariants: window fits the trimmed span, positive step, window a
    /// multiple of step. Throws ConfigError otherwise.
    void validate() const;
};

/// A fixed-length slice of a record with its task labels. Features are
/// stored flattened channel-major: element [c*W + t] is channel c (in
/// channel_index order), sample t. flatten() exposes exactly this layout.
struct LabeledWindow {
    std::vector<float> features;
    int samples_per_channel = 0; // W
    int window_length_ms = 0;
    std::uint32_t fs_hz = 0;
    bool fd_label = false;
    int fli_label = 0; // 0 = none, else faulted line 1..4
    std::uint64_t source_record_id = 0;
    int window_index = 0;
    double window_start_s = 0.0;

    const std::vector<float>& flatten() const { return features; }
    float* channel(int c) { return features.data() + static_cast<std::size_t>(c) * samples_per_channel; }
    const float* channel(int c) const {
        return features.data() + static_cast<std::size_t>(c) * samples_per_channel;
    }
};

/// Cuts the +-trim_margin span around fault_start (no-fault records: a
/// centered slice of the same width). fault_start is re-expressed relative
/// to the trimmed origin. Throws PreconditionError when the span does not
/// fit inside the record.
WaveformRecord trim(const WaveformRecord& record, const WindowingConfig& cfg);

/// Label rule: a window is fault-positive when its half-open time span
/// [start, start + window_length) overlaps [fault_start, record end).
std::pair<bool, int> label_window(double window_start_s, double window_length_s,
                                  const ScenarioParams& meta);

/// Slides fixed-length windows over a (trimmed) record at step_ms
/// increments. Window count = floor((span - window)/step) + 1.
std::vector<LabeledWindow> slide_windows(const WaveformRecord& record,
                                         const WindowingConfig& cfg);

/// Samples per channel for a window at a given rate. Never below one
/// sample: at extreme decimation factors the nominal value rounds to
/// zero, which would make the feature vector vanish.
int window_sample_count(int window_length_ms, std::uint32_t fs_hz);

} // namespace sgb
