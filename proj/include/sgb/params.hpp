#pragma once

#include <array>
#include <cstdint>

namespace sgb {

/// Randomization bounds exposed in the [generation] config section.
/// The remaining draw ranges (fault position, inception angle, ...) are
/// fixed model constants.
struct ParamRanges {
    double fault_current_ratio_min = 3.5;
    double fault_current_ratio_max = 12.0;
    double dc_offset_tau_min = 0.005;
    double dc_offset_tau_max = 0.015;
    double load_magnitude_min = 0.80;
    double load_magnitude_max = 1.25;
    double line_length_min_km = 60.0;
    double line_length_max_km = 140.0;

    /// Throws ConfigError when any min exceeds its max.
    void validate() const;
};

/// One record's full fault configuration. Identical seeds reproduce
/// identical params bit for bit.
struct ScenarioParams {
    std::uint64_t seed = 0;
    int fault_line = 0;            // 0 = no fault, else 1..4
    double fault_position = 0.0;   // fraction along the line from its from_bus
    double fault_start = 0.0;      // seconds
    double system_frequency = 50.0;
    double load_angle = 0.0;       // radians
    double load_magnitude = 1.0;   // per unit
    std::array<double, 4> line_lengths_km{100.0, 100.0, 100.0, 100.0};
    double fault_current_ratio = 1.0; // post/pre RMS on the faulted line
    double dc_offset_tau = 0.05;      // seconds
    double fault_inception_angle = 0.0;

    bool has_fault() const { return fault_line != 0; }
    bool operator==(const ScenarioParams&) const = default;
};

/// Draws a full parameter set deterministically from `seed`. The draw
/// sequence is fixed regardless of `with_fault`, so a fault record and a
/// no-fault record from the same seed share every steady-state parameter.
ScenarioParams randomize_params(std::uint64_t seed, const ParamRanges& ranges,
                                bool with_fault = true);

} // namespace sgb
