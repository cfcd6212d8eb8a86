#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qcs {

using Tick = std::uint64_t;

struct LatencyViolation {
    std::size_t index = 0;
    /// Observed out - in latency; empty when the event has no partner.
    std::optional<std::int64_t> observed;
};

/// Valid-timing verdict: i-th input event paired with i-th output event.
struct LatencyReport {
    std::int64_t expected_latency = 0;
    std::vector<std::pair<Tick, Tick>> pairs;
    std::vector<LatencyViolation> violations;
    bool pass = false;
};

/// Pairs events ordinally and flags every pair whose latency differs from
/// expected_latency, plus every unpaired event. Count mismatch is a reported
/// violation, not an error. Event lists must be strictly increasing.
LatencyReport assert_latency(const std::vector<Tick>& in_events,
                             const std::vector<Tick>& out_events,
                             std::int64_t expected_latency);

}  // namespace qcs
