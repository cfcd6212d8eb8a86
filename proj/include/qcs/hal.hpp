#pragma once

#include <vector>

#include "qcs/engine/engine.hpp"

namespace qcs::hal {

/// Operational surface for user workflows: configure, start, record, stop.
/// Workflows built on these verbs run unchanged whether the engines behind
/// them are simulated or real; nothing above this layer touches engine
/// internals.
class Controller {
  public:
    explicit Controller(const DeviceConfig& device);

    const DeviceConfig& device() const { return device_; }
    EngineCluster& cluster() { return cluster_; }

    /// Load config RAMs and instruction queues on every unit.
    void configure(const pulse::CompiledProgram& compiled);

    /// Synchronized start: all units share tick 0.
    void start();

    bool started() const { return started_; }
    pulse::Tick program_ticks() const { return program_ticks_; }

    void advance(pulse::Tick n_ticks);

    /// Advance to the end of the loaded program (capture windows included).
    void run_to_end();

    /// Manual capture on one channel, at most `budget` stored samples.
    /// Advances only the owning unit; mixing record() with multi-unit
    /// advance() de-aligns units, so multi-unit flows use scheduled captures.
    SampleTrace record(std::uint32_t channel, pulse::Tick window, std::uint32_t budget);

    /// Traces recorded by scheduled capture instructions.
    std::vector<SampleTrace> collect_traces();

    /// Valid-timing event logs of one channel.
    const std::vector<pulse::Tick>& play_in_events(std::uint32_t channel);
    const std::vector<pulse::Tick>& play_out_events(std::uint32_t channel);

    /// Halt and disarm every unit.
    void stop();

  private:
    ExecutionEngine& owner_of(std::uint32_t channel);

    DeviceConfig device_;
    EngineCluster cluster_;
    pulse::Tick program_ticks_ = 0;
    bool started_ = false;
};

}  // namespace qcs::hal
