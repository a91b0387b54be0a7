#pragma once

#include <cstdint>

#include "sgb/waveform.hpp"

namespace sgb::testing {

/// Record with recognizable content: channel c, sample k holds
/// 1000*c + k + 1 (never zero), so zeroing and slicing are easy to check.
inline WaveformRecord make_patterned_record(std::uint32_t fs_hz, double duration_s,
                                            int fault_line = 0,
                                            double fault_start = 0.0,
                                            std::uint64_t record_id = 0) {
    WaveformRecord rec;
    rec.record_id = record_id;
    rec.fs_hz = fs_hz;
    rec.duration_s = duration_s;
    rec.meta.seed = record_id;
    rec.meta.fault_line = fault_line;
    rec.meta.fault_start = fault_start;
    const std::size_t n =
        static_cast<std::size_t>(duration_s * static_cast<double>(fs_hz) + 0.5);
    rec.samples.resize(static_cast<std::size_t>(kNumChannels) * n);
    for (int c = 0; c < kNumChannels; ++c)
        for (std::size_t k = 0; k < n; ++k)
            rec.channel(c)[k] = static_cast<float>(1000 * c + static_cast<int>(k) + 1);
    return rec;
}

} // namespace sgb::testing
