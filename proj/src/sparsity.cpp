#include "sgb/sparsity.hpp"

#include <cmath>
#include <cstring>

#include "sgb/errors.hpp"
#include "sgb/experiment.hpp"
#include "sgb/rng.hpp"
#include "sgb/topology.hpp"

namespace sgb {

std::string SparsityScenario::to_string() const {
    switch (kind) {
        case ScenarioKind::None: return "none";
        case ScenarioKind::MissingVoltage: return "missing_v";
        case ScenarioKind::MissingCurrent: return "missing_i";
        case ScenarioKind::Downsample: return "downsample:" + std::to_string(param);
        case ScenarioKind::BusFailure: return "bus:" + std::to_string(param);
        case ScenarioKind::RelayFailure: return "relay:" + std::to_string(param);
        case ScenarioKind::PhaseFailure:
            return std::string("phase:") + static_cast<char>('A' + param);
        case ScenarioKind::CommLoss: return "commloss:" + std::to_string(param);
    }
    return "none";
}

SparsityScenario SparsityScenario::parse(const std::string& s) {
    auto int_arg = [&](std::size_t prefix_len) {
        try {
            return std::stoi(s.substr(prefix_len));
        } catch (const std::exception&) {
            throw ConfigError("bad scenario parameter in '" + s + "'");
        }
    };
    if (s == "none") return {ScenarioKind::None, 0, 0};
    if (s == "missing_v") return {ScenarioKind::MissingVoltage, 0, 0};
    if (s == "missing_i") return {ScenarioKind::MissingCurrent, 0, 0};
    if (s.rfind("downsample:", 0) == 0)
        return {ScenarioKind::Downsample, int_arg(11), 0};
    if (s.rfind("bus:", 0) == 0) return {ScenarioKind::BusFailure, int_arg(4), 0};
    if (s.rfind("relay:", 0) == 0) return {ScenarioKind::RelayFailure, int_arg(6), 0};
    if (s.rfind("phase:", 0) == 0) {
        if (s.size() == 7 && s[6] >= 'A' && s[6] <= 'C')
            return {ScenarioKind::PhaseFailure, s[6] - 'A', 0};
        throw ConfigError("phase must be A, B or C in '" + s + "'");
    }
    if (s.rfind("commloss:", 0) == 0) return {ScenarioKind::CommLoss, int_arg(9), 0};
    throw ConfigError("unknown scenario spelling: '" + s + "'");
}

std::array<bool, kNumChannels> zeroed_channel_mask(ScenarioKind kind, int param) {
    const Topology& topo = Topology::double_line();
    std::array<bool, kNumChannels> mask{};
    switch (kind) {
        case ScenarioKind::MissingVoltage:
        case ScenarioKind::MissingCurrent: {
            const Quantity q = kind == ScenarioKind::MissingVoltage
                                   ? Quantity::Voltage
                                   : Quantity::Current;
            for (int c = 0; c < kNumChannels; ++c)
                mask[c] = channel_from_index(c).quantity == q;
            return mask;
        }
        case ScenarioKind::BusFailure: {
            if (param < 1 || param > kNumBuses)
                throw ConfigError("unknown bus id: " + std::to_string(param));
            for (int c = 0; c < kNumChannels; ++c)
                mask[c] = topo.relay(channel_from_index(c).relay_id).attached_bus == param;
            return mask;
        }
        case ScenarioKind::RelayFailure: {
            if (param < 1 || param > kNumRelays)
                throw ConfigError("unknown relay id: " + std::to_string(param));
            for (int c = 0; c < kNumChannels; ++c)
                mask[c] = channel_from_index(c).relay_id == param;
            return mask;
        }
        case ScenarioKind::PhaseFailure: {
            if (param < 0 || param > 2)
                throw ConfigError("unknown phase ordinal: " + std::to_string(param));
            for (int c = 0; c < kNumChannels; ++c)
                mask[c] = static_cast<int>(channel_from_index(c).phase) == param;
            return mask;
        }
        default:
            throw ConfigError("scenario kind does not select channels");
    }
}

WaveformRecord apply_channel_zeroing(const WaveformRecord& rec, ScenarioKind kind,
                                     int param) {
    const auto mask = zeroed_channel_mask(kind, param);
    WaveformRecord out = rec;
    const std::size_t n = out.n_samples();
    for (int c = 0; c < kNumChannels; ++c)
        if (mask[c]) std::memset(out.channel(c), 0, n * sizeof(float));
    return out;
}

LabeledWindow apply_channel_zeroing(const LabeledWindow& win, ScenarioKind kind,
                                    int param) {
    const auto mask = zeroed_channel_mask(kind, param);
    LabeledWindow out = win;
    const std::size_t w = static_cast<std::size_t>(out.samples_per_channel);
    for (int c = 0; c < kNumChannels; ++c)
        if (mask[c]) std::memset(out.channel(c), 0, w * sizeof(float));
    return out;
}

WaveformRecord apply_downsample(const WaveformRecord& rec, std::uint32_t target_fs_hz) {
    if (target_fs_hz == 0) throw ConfigError("target sampling rate must be positive");
    if (target_fs_hz > rec.fs_hz)
        throw ConfigError("target sampling rate exceeds the base rate");
    const std::uint32_t k = static_cast<std::uint32_t>(std::lround(
        static_cast<double>(rec.fs_hz) / static_cast<double>(target_fs_hz)));
    if (k <= 1) return rec;

    const std::size_t n = rec.n_samples();
    const std::size_t n_out = (n + k - 1) / k;
    WaveformRecord out;
    out.record_id = rec.record_id;
    out.fs_hz = rec.fs_hz / k;
    out.duration_s = static_cast<double>(n_out) / static_cast<double>(out.fs_hz);
    out.meta = rec.meta;
    out.samples.resize(static_cast<std::size_t>(kNumChannels) * n_out);
    for (int c = 0; c < kNumChannels; ++c) {
        const float* src = rec.channel(c);
        float* dst = out.channel(c);
        for (std::size_t i = 0; i < n_out; ++i) dst[i] = src[i * k];
    }
    return out;
}

LabeledWindow apply_comm_loss(const LabeledWindow& win, int duration_ms,
                              std::uint64_t loss_seed) {
    if (duration_ms >= win.window_length_ms)
        throw ApplicabilityError(
            "communication loss must be shorter than the window (" +
            std::to_string(duration_ms) + " ms >= " +
            std::to_string(win.window_length_ms) + " ms)");
    const int w = win.samples_per_channel;
    const int loss = static_cast<int>(std::lround(
        static_cast<double>(duration_ms) / 1000.0 * static_cast<double>(win.fs_hz)));
    const int span = std::min(loss, w);

    Rng rng(loss_seed ^ win.source_record_id ^ static_cast<std::uint64_t>(win.window_index));
    const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(w - span) + 1));

    LabeledWindow out = win;
    for (int c = 0; c < kNumChannels; ++c)
        std::memset(out.channel(c) + start, 0,
                    static_cast<std::size_t>(span) * sizeof(float));
    return out;
}

bool applicability(const SparsityScenario& scenario, int window_length_ms) {
    return scenario.kind != ScenarioKind::CommLoss || scenario.param < window_length_ms;
}

std::vector<ExperimentSpec> enumerate_grid(std::uint32_t base_fs_hz) {
    // Downsampling keeps the study's reduction factors at any base rate.
    static constexpr int kFactors[5] = {2, 5, 10, 25, 50};
    static constexpr int kWindowsMs[5] = {10, 20, 30, 40, 50};

    std::vector<ExperimentSpec> out;
    out.reserve(270);
    for (Task task : {Task::FD, Task::FLI}) {
        for (int window : kWindowsMs) {
            auto push = [&](ScenarioKind kind, int param) {
                out.push_back({task, window, {kind, param, 0}, ExperimentMode::RetrainDegraded});
            };
            push(ScenarioKind::None, 0);
            push(ScenarioKind::MissingVoltage, 0);
            push(ScenarioKind::MissingCurrent, 0);
            for (int f : kFactors)
                push(ScenarioKind::Downsample, static_cast<int>(base_fs_hz) / f);
            for (int bus = 1; bus <= kNumBuses; ++bus) push(ScenarioKind::BusFailure, bus);
            for (int relay = 1; relay <= kNumRelays; ++relay)
                push(ScenarioKind::RelayFailure, relay);
            for (int phase = 0; phase < 3; ++phase) push(ScenarioKind::PhaseFailure, phase);
            for (int dur = 5; dur < window; dur += 5) push(ScenarioKind::CommLoss, dur);
        }
    }
    return out;
}

} // namespace sgb
