#include "sgb/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "sgb/errors.hpp"
#include "sgb/rng.hpp"

namespace sgb {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kCurrentBasePeakA = 565.685424949238;  // 400 A rms
constexpr double kVoltageBasePeakV = 89815.0;           // 110 kV system, phase peak

// Measurement-point and sag geometry.
constexpr double kVtDepthFrac = 0.30;   // VT location as a fraction of line length
constexpr double kSagRefKm = 250.0;     // distance normalisation for the sag ramp
constexpr double kSagFloor = 0.05;

// Voltage support per bus; Bus 1 sits next to the external grid and holds
// its voltage up, the far end of the network does not.
constexpr double kBusStiffness[kNumBuses] = {0.55, 0.20, 0.0};

// Post-fault current factors for lines that are not faulted themselves.
// The companion line carries the loop infeed to the fault, close to but
// strictly below the faulted line's total (0.93^2 * (1+g)^2 / 2 stays
// under (1-g)^2 / 2 minus the worst-case DC cross term for every ratio in
// range); remote lines only see load redistribution.
constexpr double kCompanionShareLo = 0.89;
constexpr double kCompanionShareHi = 0.93;
// Small masking DC on the companion, load-scale rather than fault-scale.
constexpr double kCompanionDcSpread = 0.8;
constexpr double kRemoteLoadLo = 1.15;
constexpr double kRemoteLoadHi = 1.25;

// Calibration gain spreads (relative). Current gains are shared by the
// three phases of a relay so the per-instant phase sum stays balanced.
constexpr double kCurrentGainSigma = 0.004;
constexpr double kVoltageGainSigma = 0.025;

// Fault-arc distortion: third and fifth harmonic content of the fault
// loop current. Magnitudes are drawn once per record and shared by the
// faulted line and its companion (phases are not), so their RMS ratio
// stays exactly at the companion share.
constexpr double kHarm3Lo = 0.10, kHarm3Hi = 0.35;
constexpr double kHarm5Lo = 0.05, kHarm5Hi = 0.25;

constexpr std::uint64_t kCurrentGainStream = 0x63757267;    // "curg"
constexpr std::uint64_t kVoltageGainStream = 0x766f6c67;    // "volg"
constexpr std::uint64_t kCompanionShareStream = 0x636f7368; // "cosh"
constexpr std::uint64_t kRemoteLoadStream = 0x726c6f64;     // "rlod"
constexpr std::uint64_t kHarmonicStream = 0x6861726d;       // "harm"
constexpr std::uint64_t kPhaseJitterStream = 0x706a6974;    // "pjit"

constexpr double phase_offset(int phase) {
    return phase == 0 ? 0.0 : (phase == 1 ? -kTwoPi / 3.0 : kTwoPi / 3.0);
}

double relay_current_gain(std::uint64_t seed, int relay_id) {
    Rng g(seed ^ mix64(kCurrentGainStream + static_cast<std::uint64_t>(relay_id)));
    return 1.0 + kCurrentGainSigma * g.gaussian();
}

double channel_voltage_gain(std::uint64_t seed, int channel) {
    Rng g(seed ^ mix64(kVoltageGainStream + static_cast<std::uint64_t>(channel)));
    return 1.0 + kVoltageGainSigma * g.gaussian();
}

/// Shortest bus-to-bus distances over the four lines.
struct BusDistances {
    double d[kNumBuses][kNumBuses];
};

BusDistances bus_distances(const std::array<double, 4>& len) {
    const double s12 = std::min(len[0], len[1]);
    const double s23 = std::min(len[2], len[3]);
    BusDistances b{};
    b.d[0][0] = b.d[1][1] = b.d[2][2] = 0.0;
    b.d[0][1] = b.d[1][0] = s12;
    b.d[1][2] = b.d[2][1] = s23;
    b.d[0][2] = b.d[2][0] = s12 + s23;
    return b;
}

/// Electrical distance in km from the fault point to each relay's VT.
std::array<double, kNumRelays> fault_to_relay_distances(const ScenarioParams& p) {
    const Topology& topo = Topology::double_line();
    const BusDistances bd = bus_distances(p.line_lengths_km);

    const LineInfo& fl = topo.line(p.fault_line);
    const double flen = p.line_lengths_km[p.fault_line - 1];
    double d_bus[kNumBuses];
    for (int b = 1; b <= kNumBuses; ++b) {
        const double via_from = p.fault_position * flen + bd.d[fl.from_bus - 1][b - 1];
        const double via_to = (1.0 - p.fault_position) * flen + bd.d[fl.to_bus - 1][b - 1];
        d_bus[b - 1] = std::min(via_from, via_to);
    }

    std::array<double, kNumRelays> out{};
    for (const RelayInfo& r : topo.relays) {
        const LineInfo& li = topo.line(r.line_id);
        const double llen = p.line_lengths_km[r.line_id - 1];
        // VT position as a fraction from the line's from_bus.
        const double q = (r.attached_bus == li.from_bus) ? kVtDepthFrac : 1.0 - kVtDepthFrac;
        double d = std::min(d_bus[li.from_bus - 1] + q * llen,
                            d_bus[li.to_bus - 1] + (1.0 - q) * llen);
        if (r.line_id == p.fault_line)
            d = std::min(d, std::abs(p.fault_position - q) * llen);
        out[r.relay_id - 1] = d;
    }
    return out;
}

double sag_factor(double distance_km, int bus_id) {
    const double ramp = std::clamp(distance_km / kSagRefKm, kSagFloor, 1.0);
    const double w = kBusStiffness[bus_id - 1];
    return w + (1.0 - w) * ramp;
}

/// Writes (or adds) A*sin(w*t + phi) for sample indices [k_begin, k_end)
/// into dst, scaled by `scale`, using a rotation recurrence (one sin/cos
/// pair per segment instead of one per sample).
void fill_sine(float* dst, std::size_t k_begin, std::size_t k_end, double fs,
               double amp, double omega, double phi, double scale,
               bool add = false) {
    if (k_begin >= k_end) return;
    const double step = omega / fs;
    double s = std::sin(phi + step * static_cast<double>(k_begin));
    double c = std::cos(phi + step * static_cast<double>(k_begin));
    const double sd = std::sin(step);
    const double cd = std::cos(step);
    const double a = amp * scale;
    for (std::size_t k = k_begin; k < k_end; ++k) {
        const float v = static_cast<float>(a * s);
        dst[k] = add ? dst[k] + v : v;
        const double ns = s * cd + c * sd;
        c = c * cd - s * sd;
        s = ns;
    }
}

/// Adds D*exp(-(t - t0)/tau) for indices [k_begin, k_end).
void add_decay(float* dst, std::size_t k_begin, std::size_t k_end, double fs,
               double d0, double t0, double tau, double scale) {
    if (k_begin >= k_end) return;
    double e = std::exp(-((static_cast<double>(k_begin) / fs) - t0) / tau);
    const double decay = std::exp(-1.0 / (fs * tau));
    const double d = d0 * scale;
    for (std::size_t k = k_begin; k < k_end; ++k) {
        dst[k] += static_cast<float>(d * e);
        e *= decay;
    }
}

} // namespace

WaveformRecord simulate(const ScenarioParams& params, std::uint32_t fs_hz,
                        std::uint64_t record_id) {
    if (static_cast<double>(fs_hz) < 2.0 * params.system_frequency)
        throw ConfigError("sampling rate below 2x system frequency (aliasing)");

    const Topology& topo = Topology::double_line();
    const double duration = 1.0;
    const std::size_t n = static_cast<std::size_t>(
        std::llround(static_cast<double>(fs_hz) * duration));

    WaveformRecord rec;
    rec.record_id = record_id;
    rec.fs_hz = fs_hz;
    rec.duration_s = duration;
    rec.meta = params;
    rec.samples.assign(static_cast<std::size_t>(kNumChannels) * n, 0.0f);

    const double fs = static_cast<double>(fs_hz);
    const double omega = kTwoPi * params.system_frequency;
    const double la = params.load_angle;
    const double i_pre = params.load_magnitude * kCurrentBasePeakA;

    // First sample index at or after fault inception; n for no-fault records.
    std::size_t k0 = n;
    if (params.has_fault()) {
        k0 = static_cast<std::size_t>(std::ceil(params.fault_start * fs));
        k0 = std::min(k0, n);
    }
    const double t0 = params.fault_start;

    // Currents, one line at a time; both end relays measure the same line
    // current through their own calibration gain.
    enum class LineRole { Steady, Faulted, Companion, Remote };
    Rng harm_rng(params.seed ^ mix64(kHarmonicStream));
    const double h3 = harm_rng.uniform(kHarm3Lo, kHarm3Hi);
    const double h5 = harm_rng.uniform(kHarm5Lo, kHarm5Hi);

    for (const LineInfo& li : topo.lines) {
        LineRole role = LineRole::Steady;
        double post_factor = 1.0;
        if (params.has_fault()) {
            if (li.line_id == params.fault_line) {
                role = LineRole::Faulted;
                post_factor = params.fault_current_ratio;
            } else if (li.line_id == topo.companion_line(params.fault_line)) {
                Rng share_rng(params.seed ^ mix64(kCompanionShareStream + li.line_id));
                role = LineRole::Companion;
                post_factor = share_rng.uniform(kCompanionShareLo, kCompanionShareHi) *
                              params.fault_current_ratio;
            } else {
                role = LineRole::Remote;
                Rng remote_rng(params.seed ^ mix64(kRemoteLoadStream + li.line_id));
                post_factor = remote_rng.uniform(kRemoteLoadLo, kRemoteLoadHi);
            }
        }

        // Per-line post-fault phase behaviour: the faulted line jumps by
        // the inception angle and keeps a continuity DC; the companion's
        // loop current settles at an unrelated angle with no DC, so its
        // RMS is exactly its share of the fault current.
        Rng jitter_rng(params.seed ^ mix64(kPhaseJitterStream + li.line_id));
        const bool arc = role == LineRole::Faulted || role == LineRole::Companion;
        double post_shift = 0.0;
        if (role == LineRole::Faulted) post_shift = params.fault_inception_angle;
        if (role == LineRole::Companion) post_shift = jitter_rng.uniform(-3.14159, 3.14159);
        const double chi3 = jitter_rng.uniform(-3.14159, 3.14159);
        const double chi5 = jitter_rng.uniform(-3.14159, 3.14159);

        const std::array<int, 2> ends = topo.relays_of_line(li.line_id);
        for (int phase = 0; phase < kPhasesPerRelay; ++phase) {
            const double phi = phase_offset(phase) + la;
            const double a_post = post_factor * i_pre;
            const double s0 = std::sin(omega * t0 + phi);

            double d0 = 0.0;
            if (role == LineRole::Faulted)
                d0 = i_pre * s0 - a_post * std::sin(omega * t0 + phi + post_shift);
            else if (role == LineRole::Companion)
                d0 = i_pre * kCompanionDcSpread * (jitter_rng.uniform() * 2.0 - 1.0);
            else if (role == LineRole::Remote)
                d0 = (i_pre - a_post) * s0;

            for (int end = 0; end < 2; ++end) {
                const int relay_id = ends[end];
                const double gain = relay_current_gain(params.seed, relay_id);
                float* ch = rec.channel(
                    channel_index({relay_id, Quantity::Current, static_cast<Phase>(phase)}));
                fill_sine(ch, 0, k0, fs, i_pre, omega, phi, gain);
                if (k0 < n) {
                    fill_sine(ch, k0, n, fs, a_post, omega, phi + post_shift, gain);
                    if (arc) {
                        fill_sine(ch, k0, n, fs, a_post * h3, 3.0 * omega,
                                  3.0 * (phi + post_shift) + chi3, gain, true);
                        fill_sine(ch, k0, n, fs, a_post * h5, 5.0 * omega,
                                  5.0 * (phi + post_shift) + chi5, gain, true);
                    }
                    if (d0 != 0.0)
                        add_decay(ch, k0, n, fs, d0, t0, params.dc_offset_tau, gain);
                }
            }
        }
    }

    // Voltages per relay measurement point.
    std::array<double, kNumRelays> sag{};
    sag.fill(1.0);
    if (params.has_fault()) {
        const std::array<double, kNumRelays> dist = fault_to_relay_distances(params);
        for (const RelayInfo& r : topo.relays)
            sag[r.relay_id - 1] = sag_factor(dist[r.relay_id - 1], r.attached_bus);
    }
    for (const RelayInfo& r : topo.relays) {
        for (int phase = 0; phase < kPhasesPerRelay; ++phase) {
            const int ci =
                channel_index({r.relay_id, Quantity::Voltage, static_cast<Phase>(phase)});
            const double gain = channel_voltage_gain(params.seed, ci);
            const double phi = phase_offset(phase) + la;
            float* ch = rec.channel(ci);
            fill_sine(ch, 0, k0, fs, kVoltageBasePeakV, omega, phi, gain);
            if (k0 < n)
                fill_sine(ch, k0, n, fs, sag[r.relay_id - 1] * kVoltageBasePeakV, omega,
                          phi, gain);
        }
    }
    return rec;
}

} // namespace sgb
