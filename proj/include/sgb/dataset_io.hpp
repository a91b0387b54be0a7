#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>

#include "sgb/dataset.hpp"
#include "sgb/waveform.hpp"

namespace sgb {

// Binary dataset layout (all integers little-endian):
//   header:  magic "SGB1" | version u16 | fs u32 | n_records u32 | n_channels u8
//   record:  record_id u64 | n_samples u32 | fault_line u8 | fault_start f64
//            | params blob length u32 | params blob | samples f32 channel-major
constexpr char kDatasetMagic[4] = {'S', 'G', 'B', '1'};
constexpr std::uint16_t kDatasetVersion = 1;

/// Streaming writer; records must be appended in ascending record_id order.
class DatasetWriter {
public:
    DatasetWriter(const std::filesystem::path& path, std::uint32_t fs_hz,
                  std::uint32_t n_records);
    void append(const WaveformRecord& rec);
    /// Flushes and verifies the promised record count was written.
    void close();
    std::uint64_t bytes_written() const { return bytes_; }

private:
    std::ofstream out_;
    std::uint32_t expected_;
    std::uint32_t written_ = 0;
    std::uint64_t bytes_ = 0;
    bool has_last_id_ = false;
    std::uint64_t last_id_ = 0;
};

void write_dataset(const std::filesystem::path& path, const Dataset& ds);

/// Loads a dataset, validating magic, version and block sizes. Throws
/// IoError on any structural problem; never returns a partial parse.
Dataset read_dataset(const std::filesystem::path& path);

} // namespace sgb
