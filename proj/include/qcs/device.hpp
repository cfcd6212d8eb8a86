#pragma once

#include <cstdint>

#include "qcs/errors.hpp"

namespace qcs {

/// Static description of the simulated control hardware. worker_count is the
/// fixed parallelism degree of an engine; it never changes after construction
/// and never changes results.
struct DeviceConfig {
    double sample_rate_hz = 1e9;  // one tick = one output sample
    std::uint32_t units = 1;
    std::uint32_t channels_per_unit = 4;
    std::uint32_t queue_depth = 64;        // instruction words per channel
    std::uint32_t capture_memory = 65536;  // samples per capture buffer
    std::uint32_t worker_count = 1;

    std::uint32_t total_channels() const { return units * channels_per_unit; }

    std::uint32_t unit_of(std::uint32_t channel) const { return channel / channels_per_unit; }

    std::uint32_t local_channel(std::uint32_t channel) const {
        return channel % channels_per_unit;
    }

    void validate() const {
        if (!(sample_rate_hz > 0.0)) throw Error("sample_rate must be positive");
        if (units < 1 || channels_per_unit < 1) throw Error("device needs at least one channel");
        if (queue_depth < 1) throw Error("queue_depth must be >= 1");
        if (capture_memory < 1) throw Error("capture_memory must be >= 1");
        if (worker_count < 1) throw Error("worker_count must be >= 1");
    }
};

}  // namespace qcs
