#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qcs {

using Tick = std::uint64_t;

/// Captured output of one channel. Sample i was taken at tick
/// start_tick + i * decimation.
struct SampleTrace {
    std::uint16_t channel = 0;
    Tick start_tick = 0;
    double sample_rate_hz = 1e9;
    std::uint32_t decimation = 1;
    std::vector<std::int16_t> samples;

    Tick tick_of(std::size_t i) const { return start_tick + i * decimation; }
    Eigen::ArrayXd real() const;

    bool operator==(const SampleTrace&) const = default;
};

/// Binary trace format, little-endian throughout:
///   "QCTR" | version u16 | channel u16 | start_tick u64 | sample_rate f64 |
///   decimation u32 | count u64 | count x i16 (Q1.15)
inline constexpr std::uint16_t kTraceVersion = 1;

void write_trace(std::ostream& out, const SampleTrace& trace);
SampleTrace read_trace(std::istream& in);

void write_trace_file(const std::string& path, const SampleTrace& trace);
SampleTrace read_trace_file(const std::string& path);

/// CSV export with header `tick,channel,fixed,real`.
std::string trace_to_csv(const SampleTrace& trace);

}  // namespace qcs
