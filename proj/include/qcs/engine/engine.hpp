#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "qcs/config.hpp"
#include "qcs/device.hpp"
#include "qcs/engine/trace.hpp"
#include "qcs/envelope.hpp"
#include "qcs/pulse/instructions.hpp"

namespace qcs {

/// Per-channel queue occupancy after a load (the static high-water mark).
struct LoadReport {
    std::map<std::uint32_t, std::uint32_t> high_water;
};

/// Cycle-deterministic model of one execution unit.
///
/// Tick semantics: at each tick every instruction whose fire_tick equals the
/// current tick is applied to the channel state first, then one output sample
/// is generated per channel. A word firing at tick t therefore already shapes
/// sample t, and the datapath adds no further latency. Oscillator phase keeps
/// accumulating while a channel idles; idle channels output zero.
///
/// Determinism: a trace is a pure function of (streams, configs, envelopes).
/// worker_count only partitions independent channels, so results are
/// bit-identical to sequential execution for any worker count.
class ExecutionEngine {
  public:
    ExecutionEngine(const DeviceConfig& device, std::uint32_t unit);

    const DeviceConfig& device() const { return device_; }
    std::uint32_t unit() const { return unit_; }
    bool armed() const { return armed_; }
    pulse::Tick current_tick() const { return tick_; }

    /// Configuration-time state. Allowed only on a disarmed engine.
    void set_envelopes(std::vector<EnvelopeSpec> envelopes);
    void load_config(std::uint32_t channel, const ChannelConfig& cfg);

    /// Queue an instruction stream and arm. Rejects a second load, streams of
    /// another unit, unsorted words, and any channel whose simultaneous
    /// residency exceeds queue_depth.
    LoadReport load(const pulse::InstructionStream& stream);

    /// Convenience: envelopes + initial configs + this unit's stream.
    LoadReport load(const pulse::CompiledProgram& compiled);

    /// Back to the unloaded state; keeps the device, drops everything else.
    void reset();

    /// Advance exactly n ticks. Running past the program end emits zeros.
    void run(pulse::Tick n_ticks);

    /// Record `window` ticks of one channel starting now, storing at most
    /// `budget` samples: decimation = ceil(window/budget). Advances the
    /// engine by the window length.
    SampleTrace capture(std::uint32_t channel, pulse::Tick window, std::uint32_t budget);

    /// Captures completed by scheduled CAPTURE instructions (budget =
    /// capture_memory), oldest first.
    std::vector<SampleTrace> take_completed_captures();

    /// Valid-timing event logs: a play's fire tick and the tick its first
    /// sample came out (identical by the tick contract above).
    const std::vector<pulse::Tick>& play_in_events(std::uint32_t channel) const;
    const std::vector<pulse::Tick>& play_out_events(std::uint32_t channel) const;

    std::uint64_t instructions_loaded() const { return loaded_; }
    std::uint64_t instructions_fired() const;
    std::uint64_t instructions_remaining() const;

  private:
    struct ActivePlay {
        std::uint8_t envelope_id = 0;
        std::uint16_t length = 0;
        std::uint32_t index = 0;
    };

    struct ActiveCapture {
        pulse::Tick start = 0;
        pulse::Tick window = 0;
        std::uint32_t decimation = 1;
        std::uint32_t budget = 0;
        SampleTrace trace;
    };

    struct Channel {
        std::uint32_t id = 0;  // global channel index
        ChannelConfig config;
        std::uint32_t phase_acc = 0;
        std::deque<pulse::InstructionWord> queue;
        std::optional<ActivePlay> play;
        std::optional<ActiveCapture> capture;
        std::vector<SampleTrace> completed;
        std::vector<pulse::Tick> in_events;
        std::vector<pulse::Tick> out_events;
        std::uint64_t fired = 0;
    };

    std::uint32_t local(std::uint32_t channel) const;
    void apply(Channel& ch, const pulse::InstructionWord& word, pulse::Tick tick);
    std::int16_t generate(Channel& ch, pulse::Tick tick);
    void step_channel(Channel& ch, pulse::Tick from, pulse::Tick n);
    void arm_capture(Channel& ch, pulse::Tick start, pulse::Tick window, std::uint32_t budget,
                     std::uint32_t channel_id);

    DeviceConfig device_;
    std::uint32_t unit_ = 0;
    bool armed_ = false;
    pulse::Tick tick_ = 0;
    std::uint64_t loaded_ = 0;
    std::vector<Channel> channels_;
    std::vector<EnvelopeSpec> envelopes_;
};

/// All execution units of a device, with the shared logical start event.
class EngineCluster {
  public:
    explicit EngineCluster(const DeviceConfig& device);

    DeviceConfig& device() { return device_; }
    std::size_t size() const { return engines_.size(); }
    ExecutionEngine& engine(std::uint32_t unit) { return engines_[unit]; }

    /// Distribute a compiled program across units.
    void load(const pulse::CompiledProgram& compiled);

    /// Align every engine to tick 0. All engines must be loaded and armed.
    void sync_start();

    /// Advance all engines by the same tick count.
    void run(pulse::Tick n_ticks);

    std::vector<SampleTrace> take_completed_captures();

  private:
    DeviceConfig device_;
    std::vector<ExecutionEngine> engines_;
};

}  // namespace qcs
