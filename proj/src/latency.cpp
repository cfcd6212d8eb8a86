#include "qcs/latency.hpp"

#include "qcs/errors.hpp"

namespace qcs {
namespace {

void require_strictly_increasing(const std::vector<Tick>& events, const char* name) {
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i] <= events[i - 1]) {
            throw Error(std::string(name) + " events must be strictly increasing");
        }
    }
}

}  // namespace

LatencyReport assert_latency(const std::vector<Tick>& in_events,
                             const std::vector<Tick>& out_events,
                             std::int64_t expected_latency) {
    require_strictly_increasing(in_events, "input");
    require_strictly_increasing(out_events, "output");

    LatencyReport report;
    report.expected_latency = expected_latency;

    const std::size_t paired = std::min(in_events.size(), out_events.size());
    for (std::size_t i = 0; i < paired; ++i) {
        report.pairs.emplace_back(in_events[i], out_events[i]);
        const auto observed =
            static_cast<std::int64_t>(out_events[i]) - static_cast<std::int64_t>(in_events[i]);
        if (observed != expected_latency) {
            report.violations.push_back({i, observed});
        }
    }
    const std::size_t total = std::max(in_events.size(), out_events.size());
    for (std::size_t i = paired; i < total; ++i) {
        report.violations.push_back({i, std::nullopt});
    }
    report.pass = report.violations.empty();
    return report;
}

}  // namespace qcs
