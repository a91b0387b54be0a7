#pragma once

#include <cstdint>

#include "sgb/waveform.hpp"

namespace sgb {

/// Synthesizes the 48-channel record for one parameter set.
///
/// The model is a piecewise phasor description. Before fault_start every
/// channel is a balanced 50 Hz sinusoid. From fault_start on, currents on
/// the faulted line jump to fault_current_ratio times the load current
/// plus a decaying DC offset (continuous at inception), the parallel
/// companion line carries a position-dependent share of the fault
/// current, remote lines pick up a mild redistribution factor, and every
/// relay voltage sags linearly with the electrical distance between the
/// fault and that relay's measurement point (floor-clamped). Voltage
/// channels and relay current chains carry small per-record calibration
/// gains so records are not exactly alike.
///
/// Throws ConfigError when fs is below twice the system frequency.
WaveformRecord simulate(const ScenarioParams& params, std::uint32_t fs_hz,
                        std::uint64_t record_id = 0);

} // namespace sgb
