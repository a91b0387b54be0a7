#include "sgb/params.hpp"

#include "sgb/errors.hpp"
#include "sgb/rng.hpp"

namespace sgb {

namespace {
// Draw bounds that are not user-configurable. Faults at the extreme line
// ends behave like bus faults, which are a different scenario class, so
// the position stays clear of the terminals.
constexpr double kFaultPositionMin = 0.15;
constexpr double kFaultPositionMax = 0.85;
constexpr double kFaultStartMin = 0.30;
constexpr double kFaultStartMax = 0.70;
constexpr double kLoadAngleSpread = 0.04;           // radians
constexpr double kInceptionAngleSpread = 3.14159265; // radians
} // namespace

void ParamRanges::validate() const {
    auto check = [](double lo, double hi, const char* name) {
        if (lo > hi)
            throw ConfigError(std::string("parameter range has min > max: ") + name);
    };
    check(fault_current_ratio_min, fault_current_ratio_max, "fault_current_ratio");
    check(dc_offset_tau_min, dc_offset_tau_max, "dc_offset_tau");
    check(load_magnitude_min, load_magnitude_max, "load_magnitude");
    check(line_length_min_km, line_length_max_km, "line_length_km");
}

ScenarioParams randomize_params(std::uint64_t seed, const ParamRanges& ranges,
                                bool with_fault) {
    ranges.validate();
    Rng rng(seed);

    ScenarioParams p;
    p.seed = seed;
    p.system_frequency = 50.0;
    p.load_angle = rng.uniform(-kLoadAngleSpread, kLoadAngleSpread);
    p.load_magnitude = rng.uniform(ranges.load_magnitude_min, ranges.load_magnitude_max);
    for (double& len : p.line_lengths_km)
        len = rng.uniform(ranges.line_length_min_km, ranges.line_length_max_km);

    // Fault fields are always drawn so the stream position stays the same
    // for both record kinds; for a no-fault record they are simply unset.
    const int line = 1 + static_cast<int>(rng.below(4));
    const double position = rng.uniform(kFaultPositionMin, kFaultPositionMax);
    const double start = rng.uniform(kFaultStartMin, kFaultStartMax);
    const double ratio =
        rng.uniform(ranges.fault_current_ratio_min, ranges.fault_current_ratio_max);
    const double tau = rng.uniform(ranges.dc_offset_tau_min, ranges.dc_offset_tau_max);
    const double inception = rng.uniform(-kInceptionAngleSpread, kInceptionAngleSpread);

    if (with_fault) {
        p.fault_line = line;
        p.fault_position = position;
        p.fault_start = start;
        p.fault_current_ratio = ratio;
        p.dc_offset_tau = tau;
        p.fault_inception_angle = inception;
    }
    return p;
}

} // namespace sgb
