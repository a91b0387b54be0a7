#include "sgb/dataset.hpp"

#include <cmath>
#include <future>
#include <thread>

#include "sgb/dataset_io.hpp"
#include "sgb/errors.hpp"
#include "sgb/simulate.hpp"

namespace sgb {

bool record_is_fault(std::uint64_t index, double fault_fraction) {
    // Evenly interleaved: record i is a fault record when the cumulative
    // quota crosses an integer at i.
    const double before = static_cast<double>(index) * fault_fraction;
    const double after = static_cast<double>(index + 1) * fault_fraction;
    return std::floor(after) > std::floor(before);
}

GenerationSummary generate_dataset(const std::filesystem::path& path, std::uint64_t n,
                                   std::uint64_t seed, std::uint32_t fs_hz,
                                   double fault_fraction, const ParamRanges& ranges,
                                   unsigned jobs) {
    if (n < 1) throw PreconditionError("dataset must contain at least one record");
    if (fault_fraction < 0.0 || fault_fraction > 1.0)
        throw ConfigError("fault_fraction must lie in [0, 1]");
    ranges.validate();
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

    DatasetWriter writer(path, fs_hz, static_cast<std::uint32_t>(n));
    GenerationSummary summary;
    summary.n_records = n;

    auto make_record = [&](std::uint64_t id) {
        const bool fault = record_is_fault(id, fault_fraction);
        const ScenarioParams p = randomize_params(seed ^ id, ranges, fault);
        return simulate(p, fs_hz, id);
    };

    // Chunked generation keeps memory flat at paper scale; the writer
    // consumes each chunk in id order regardless of worker timing.
    const std::uint64_t chunk = 32;
    for (std::uint64_t base = 0; base < n; base += chunk) {
        const std::uint64_t end = std::min(n, base + chunk);
        std::vector<WaveformRecord> block(end - base);
        if (jobs <= 1) {
            for (std::uint64_t id = base; id < end; ++id)
                block[id - base] = make_record(id);
        } else {
            std::vector<std::future<WaveformRecord>> futs;
            futs.reserve(end - base);
            for (std::uint64_t id = base; id < end; ++id)
                futs.push_back(std::async(std::launch::async, make_record, id));
            for (std::uint64_t id = base; id < end; ++id)
                block[id - base] = futs[id - base].get();
        }
        for (WaveformRecord& rec : block) {
            if (rec.meta.has_fault()) ++summary.n_fault_records;
            writer.append(rec);
        }
    }
    writer.close();
    summary.bytes_written = writer.bytes_written();
    return summary;
}

} // namespace sgb
