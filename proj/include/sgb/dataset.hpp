#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sgb/params.hpp"
#include "sgb/waveform.hpp"

namespace sgb {

struct Dataset {
    std::uint32_t fs_hz = 0;
    std::vector<WaveformRecord> records;
};

struct GenerationSummary {
    std::uint64_t n_records = 0;
    std::uint64_t n_fault_records = 0;
    std::uint64_t bytes_written = 0;
};

/// Whether record `i` of `n` is a fault record. Fault records are spread
/// evenly so the realized fraction matches `fault_fraction` exactly up to
/// rounding, independent of n.
bool record_is_fault(std::uint64_t index, double fault_fraction);

/// Generates `n` records (per-record seed = seed ^ record_id) and writes
/// them to `path` in ascending record_id order. Generation is chunked and
/// may fan out over `jobs` worker threads; output bytes do not depend on
/// the job count.
GenerationSummary generate_dataset(const std::filesystem::path& path, std::uint64_t n,
                                   std::uint64_t seed, std::uint32_t fs_hz,
                                   double fault_fraction, const ParamRanges& ranges,
                                   unsigned jobs = 1);

} // namespace sgb
