#include "sgb/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "sgb/errors.hpp"

namespace sgb {

void WindowingConfig::validate() const {
    if (window_length_ms <= 0) throw ConfigError("window_length_ms must be positive");
    if (step_ms <= 0) throw ConfigError("step_ms must be positive");
    if (window_length_ms > 2 * trim_margin_ms)
        throw ConfigError("window_length_ms exceeds the trimmed span");
    if (window_length_ms % step_ms != 0)
        throw ConfigError("window_length_ms must be a multiple of step_ms");
}

int window_sample_count(int window_length_ms, std::uint32_t fs_hz) {
    const long w = std::lround(static_cast<double>(window_length_ms) / 1000.0 *
                               static_cast<double>(fs_hz));
    return static_cast<int>(std::max(1l, w));
}

WaveformRecord trim(const WaveformRecord& record, const WindowingConfig& cfg) {
    cfg.validate();
    const double margin = static_cast<double>(cfg.trim_margin_ms) / 1000.0;
    const double center =
        record.meta.has_fault() ? record.meta.fault_start : record.duration_s / 2.0;
    if (center - margin < 0.0 || center + margin > record.duration_s)
        throw PreconditionError("trim span exceeds record bounds");

    const double fs = static_cast<double>(record.fs_hz);
    const std::size_t n = record.n_samples();
    std::size_t n_trim = static_cast<std::size_t>(std::llround(2.0 * margin * fs));
    n_trim = std::min(n_trim, n);
    std::size_t i0 = static_cast<std::size_t>(
        std::max(0.0, std::round((center - margin) * fs)));
    i0 = std::min(i0, n - n_trim);

    WaveformRecord out;
    out.record_id = record.record_id;
    out.fs_hz = record.fs_hz;
    out.duration_s = 2.0 * margin;
    out.meta = record.meta;
    if (out.meta.has_fault()) out.meta.fault_start = margin;
    out.samples.resize(static_cast<std::size_t>(kNumChannels) * n_trim);
    for (int c = 0; c < kNumChannels; ++c)
        std::memcpy(out.channel(c), record.channel(c) + i0, n_trim * sizeof(float));
    return out;
}

std::pair<bool, int> label_window(double window_start_s, double window_length_s,
                                  const ScenarioParams& meta) {
    const bool fd =
        meta.has_fault() && meta.fault_start < window_start_s + window_length_s;
    return {fd, fd ? meta.fault_line : 0};
}

std::vector<LabeledWindow> slide_windows(const WaveformRecord& record,
                                         const WindowingConfig& cfg) {
    cfg.validate();
    const long span_ms = std::lround(record.duration_s * 1000.0);
    if (cfg.window_length_ms > span_ms)
        throw PreconditionError("window longer than record");

    const int count =
        static_cast<int>((span_ms - cfg.window_length_ms) / cfg.step_ms) + 1;
    const double fs = static_cast<double>(record.fs_hz);
    const int w = window_sample_count(cfg.window_length_ms, record.fs_hz);
    const std::size_t n = record.n_samples();
    if (n < static_cast<std::size_t>(w))
        throw PreconditionError("window longer than record");
    const double window_len_s = static_cast<double>(cfg.window_length_ms) / 1000.0;

    std::vector<LabeledWindow> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double start_s = static_cast<double>(j * cfg.step_ms) / 1000.0;
        std::size_t i0 = static_cast<std::size_t>(std::llround(start_s * fs));
        i0 = std::min(i0, n - static_cast<std::size_t>(w));

        LabeledWindow win;
        win.samples_per_channel = w;
        win.window_length_ms = cfg.window_length_ms;
        win.fs_hz = record.fs_hz;
        win.source_record_id = record.record_id;
        win.window_index = j;
        win.window_start_s = start_s;
        std::tie(win.fd_label, win.fli_label) =
            label_window(start_s, window_len_s, record.meta);
        win.features.resize(static_cast<std::size_t>(kNumChannels) * w);
        for (int c = 0; c < kNumChannels; ++c)
            std::memcpy(win.channel(c), record.channel(c) + i0,
                        static_cast<std::size_t>(w) * sizeof(float));
        out.push_back(std::move(win));
    }
    return out;
}

} // namespace sgb
