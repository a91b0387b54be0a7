#pragma once

#include <array>
#include <cstdint>

namespace sgb {

constexpr int kNumBuses = 3;
constexpr int kNumLines = 4;
constexpr int kNumRelays = 8;
constexpr int kPhasesPerRelay = 3;
constexpr int kNumChannels = kNumRelays * 2 * kPhasesPerRelay; // 48

enum class Quantity : std::uint8_t { Current = 0, Voltage = 1 };
enum class Phase : std::uint8_t { A = 0, B = 1, C = 2 };

struct ChannelId {
    int relay_id;      // 1..8
    Quantity quantity;
    Phase phase;
};

/// Flat channel layout: per relay, currents A,B,C then voltages A,B,C.
constexpr int channel_index(const ChannelId& c) {
    return (c.relay_id - 1) * 6 + (c.quantity == Quantity::Voltage ? 3 : 0) +
           static_cast<int>(c.phase);
}

constexpr ChannelId channel_from_index(int idx) {
    const int within = idx % 6;
    return ChannelId{idx / 6 + 1,
                     within >= 3 ? Quantity::Voltage : Quantity::Current,
                     static_cast<Phase>(within % 3)};
}

struct LineInfo {
    int line_id;  // 1..4
    int from_bus;
    int to_bus;
};

struct RelayInfo {
    int relay_id;     // 1..8
    int line_id;      // 1..4
    int attached_bus; // 1..3
};

/// The benchmark grid: Bus 1 and Bus 2 joined by two parallel lines,
/// Bus 2 and Bus 3 joined by two more. Every line carries a relay at
/// each end, so Bus 2 (the junction) hosts four relays.
struct Topology {
    std::array<int, kNumBuses> buses;
    std::array<LineInfo, kNumLines> lines;
    std::array<RelayInfo, kNumRelays> relays;

    static const Topology& double_line();

    const LineInfo& line(int line_id) const { return lines[line_id - 1]; }
    const RelayInfo& relay(int relay_id) const { return relays[relay_id - 1]; }

    /// Relay ids at the two ends of a line, from_bus end first.
    std::array<int, 2> relays_of_line(int line_id) const;
    /// Relay ids attached to a bus (2 at Bus 1 and 3, 4 at Bus 2).
    std::array<int, 4> relays_at_bus(int bus_id, int* count) const;
    /// The parallel partner sharing both buses (1<->2, 3<->4).
    int companion_line(int line_id) const;
};

inline const Topology& Topology::double_line() {
    static const Topology t{
        {1, 2, 3},
        {{{1, 1, 2}, {2, 1, 2}, {3, 2, 3}, {4, 2, 3}}},
        {{{1, 1, 1},
          {2, 1, 2},
          {3, 2, 1},
          {4, 2, 2},
          {5, 3, 2},
          {6, 3, 3},
          {7, 4, 2},
          {8, 4, 3}}},
    };
    return t;
}

inline std::array<int, 2> Topology::relays_of_line(int line_id) const {
    std::array<int, 2> out{0, 0};
    const LineInfo& li = line(line_id);
    for (const RelayInfo& r : relays) {
        if (r.line_id != line_id) continue;
        out[r.attached_bus == li.from_bus ? 0 : 1] = r.relay_id;
    }
    return out;
}

inline std::array<int, 4> Topology::relays_at_bus(int bus_id, int* count) const {
    std::array<int, 4> out{0, 0, 0, 0};
    int n = 0;
    for (const RelayInfo& r : relays)
        if (r.attached_bus == bus_id) out[n++] = r.relay_id;
    if (count) *count = n;
    return out;
}

inline int Topology::companion_line(int line_id) const {
    switch (line_id) {
        case 1: return 2;
        case 2: return 1;
        case 3: return 4;
        default: return 3;
    }
}

} // namespace sgb
