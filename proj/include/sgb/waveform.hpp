#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgb/params.hpp"
#include "sgb/topology.hpp"

namespace sgb {

/// One simulated case: 48 channels of samples plus the fault metadata.
/// Samples are stored channel-major (channel c occupies the contiguous
/// block [c*n, (c+1)*n)), matching both the dataset file layout and the
/// feature flattening convention.
struct WaveformRecord {
    std::uint64_t record_id = 0;
    std::uint32_t fs_hz = 0;
    double duration_s = 0.0;
    ScenarioParams meta;
    std::vector<float> samples;

    std::size_t n_samples() const {
        return samples.size() / static_cast<std::size_t>(kNumChannels);
    }
    float* channel(int c) { return samples.data() + static_cast<std::size_t>(c) * n_samples(); }
    const float* channel(int c) const {
        return samples.data() + static_cast<std::size_t>(c) * n_samples();
    }
};

} // namespace sgb
