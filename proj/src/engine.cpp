#include "qcs/engine/engine.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "qcs/fixed.hpp"
#include "qcs/nco.hpp"

namespace qcs {
namespace {

std::uint32_t capture_decimation(pulse::Tick window, std::uint32_t budget) {
    if (window <= budget) return 1;
    return static_cast<std::uint32_t>((window + budget - 1) / budget);
}

}  // namespace

ExecutionEngine::ExecutionEngine(const DeviceConfig& device, std::uint32_t unit)
    : device_(device), unit_(unit) {
    device_.validate();
    if (unit >= device_.units) {
        throw EngineError("unit id " + std::to_string(unit) + " out of range (" +
                          std::to_string(device_.units) + " units)");
    }
    channels_.resize(device_.channels_per_unit);
    for (std::uint32_t i = 0; i < channels_.size(); ++i) {
        channels_[i].id = unit_ * device_.channels_per_unit + i;
    }
}

std::uint32_t ExecutionEngine::local(std::uint32_t channel) const {
    if (device_.unit_of(channel) != unit_) {
        throw EngineError("channel " + std::to_string(channel) + " not owned by unit " +
                          std::to_string(unit_));
    }
    return device_.local_channel(channel);
}

void ExecutionEngine::set_envelopes(std::vector<EnvelopeSpec> envelopes) {
    if (armed_) throw EngineError("cannot replace envelopes while armed");
    envelopes_ = std::move(envelopes);
}

void ExecutionEngine::load_config(std::uint32_t channel, const ChannelConfig& cfg) {
    if (armed_) throw EngineError("cannot write config RAM while armed");
    auto& ch = channels_[local(channel)];
    ch.config = cfg;
    ch.phase_acc = 0;
}

LoadReport ExecutionEngine::load(const pulse::InstructionStream& stream) {
    if (armed_) throw EngineError("already loaded");
    if (stream.unit != unit_) {
        throw EngineError("unit id mismatch: stream targets unit " + std::to_string(stream.unit) +
                          ", engine is unit " + std::to_string(unit_));
    }
    pulse::Tick previous = 0;
    for (const auto& word : stream.words) {
        if (word.fire_tick < previous) throw EngineError("stream words not sorted by fire tick");
        previous = word.fire_tick;
        if (word.opcode == pulse::Opcode::play &&
            pulse::play_envelope_id(word.operand) >= envelopes_.size()) {
            throw EngineError("PLAY references undefined envelope " +
                              std::to_string(pulse::play_envelope_id(word.operand)));
        }
        auto& ch = channels_[local(word.channel)];
        ch.queue.push_back(word);
        if (ch.queue.size() > device_.queue_depth) {
            const auto tick = word.fire_tick;
            reset();
            throw EngineError("queue overflow on channel " + std::to_string(word.channel) +
                              " at tick " + std::to_string(tick) + ": depth " +
                              std::to_string(device_.queue_depth) + " exceeded");
        }
    }
    LoadReport report;
    for (const auto& ch : channels_) {
        if (!ch.queue.empty()) {
            report.high_water[ch.id] = static_cast<std::uint32_t>(ch.queue.size());
        }
        loaded_ += ch.queue.size();
    }
    armed_ = true;
    return report;
}

LoadReport ExecutionEngine::load(const pulse::CompiledProgram& compiled) {
    if (armed_) throw EngineError("already loaded");
    set_envelopes(compiled.envelopes);
    for (const auto& [channel, cfg] : compiled.initial_configs) {
        if (device_.unit_of(channel) == unit_) load_config(channel, cfg);
    }
    for (const auto& stream : compiled.streams) {
        if (stream.unit == unit_) return load(stream);
    }
    return load(pulse::InstructionStream{unit_, {}, 0});
}

void ExecutionEngine::reset() {
    armed_ = false;
    tick_ = 0;
    loaded_ = 0;
    for (std::uint32_t i = 0; i < channels_.size(); ++i) {
        channels_[i] = Channel{};
        channels_[i].id = unit_ * device_.channels_per_unit + i;
    }
}

void ExecutionEngine::apply(Channel& ch, const pulse::InstructionWord& word, pulse::Tick tick) {
    using pulse::Opcode;
    switch (word.opcode) {
        case Opcode::set_ftw:
            ch.config.ftw = word.operand;
            break;
        case Opcode::set_phase:
            ch.config.phase_offset = pulse::unpack_phase_operand(word.operand);
            break;
        case Opcode::set_amp:
            ch.config.amplitude = pulse::unpack_amp_operand(word.operand);
            break;
        case Opcode::play: {
            const auto id = pulse::play_envelope_id(word.operand);
            if (id >= envelopes_.size()) {
                throw EngineError("PLAY references undefined envelope " + std::to_string(id));
            }
            ch.config.envelope_id = id;
            ch.config.envelope_len = pulse::play_length(word.operand);
            ch.play = ActivePlay{id, pulse::play_length(word.operand), 0};
            ch.in_events.push_back(tick);
            break;
        }
        case Opcode::capture:
            arm_capture(ch, tick, word.operand, device_.capture_memory, ch.id);
            break;
        case Opcode::nop:
            break;
    }
    ++ch.fired;
}

void ExecutionEngine::arm_capture(Channel& ch, pulse::Tick start, pulse::Tick window,
                                  std::uint32_t budget, std::uint32_t channel_id) {
    if (window < 1) throw EngineError("capture window must be >= 1 tick");
    if (budget < 1) throw EngineError("capture budget must be >= 1 sample");
    if (ch.capture) throw EngineError("capture already active on channel " +
                                      std::to_string(channel_id));
    ActiveCapture cap;
    cap.start = start;
    cap.window = window;
    cap.decimation = capture_decimation(window, budget);
    cap.budget = budget;
    cap.trace.channel = static_cast<std::uint16_t>(channel_id);
    cap.trace.start_tick = start;
    cap.trace.sample_rate_hz = device_.sample_rate_hz;
    cap.trace.decimation = cap.decimation;
    ch.capture = std::move(cap);
}

std::int16_t ExecutionEngine::generate(Channel& ch, pulse::Tick tick) {
    // The oscillator accumulates every tick so pulses stay phase-coherent.
    const std::uint32_t phase = ch.phase_acc + (std::uint32_t{ch.config.phase_offset} << 16);
    ch.phase_acc += ch.config.ftw;
    if (!ch.play) return 0;

    const std::int16_t raw = sine_lut()[phase >> (kPhaseAccBits - kLutAddressBits)];
    auto& play = *ch.play;
    const auto& envelope = envelopes_[play.envelope_id];
    const std::int16_t scaled = q15_mul(raw, ch.config.amplitude);
    const std::int16_t sample = q15_mul(scaled, envelope.at_fixed(play.index));
    if (play.index == 0) ch.out_events.push_back(tick);
    if (++play.index >= play.length) ch.play.reset();
    return sample;
}

void ExecutionEngine::step_channel(Channel& ch, pulse::Tick from, pulse::Tick n) {
    for (pulse::Tick offset = 0; offset < n; ++offset) {
        const pulse::Tick tick = from + offset;
        while (!ch.queue.empty() && ch.queue.front().fire_tick <= tick) {
            const pulse::InstructionWord word = ch.queue.front();
            ch.queue.pop_front();
            apply(ch, word, tick);
        }
        const std::int16_t sample = generate(ch, tick);
        if (ch.capture) {
            auto& cap = *ch.capture;
            if (tick >= cap.start && tick < cap.start + cap.window) {
                if ((tick - cap.start) % cap.decimation == 0 &&
                    cap.trace.samples.size() < cap.budget) {
                    cap.trace.samples.push_back(sample);
                }
                if (tick + 1 == cap.start + cap.window) {
                    ch.completed.push_back(std::move(cap.trace));
                    ch.capture.reset();
                }
            }
        }
    }
}

void ExecutionEngine::run(pulse::Tick n_ticks) {
    if (!armed_) throw EngineError("engine not armed");
    if (n_ticks == 0) return;
    if (tick_ > std::numeric_limits<pulse::Tick>::max() - n_ticks) {
        throw EngineError("tick overflow");
    }

    const std::uint32_t workers =
        std::min<std::uint32_t>(device_.worker_count, static_cast<std::uint32_t>(channels_.size()));
    if (workers <= 1) {
        for (auto& ch : channels_) step_channel(ch, tick_, n_ticks);
    } else {
        // Channels are independent; a static partition keeps every worker
        // count bit-identical to sequential execution.
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([this, w, workers, n_ticks, &errors] {
                try {
                    for (std::size_t c = w; c < channels_.size(); c += workers) {
                        step_channel(channels_[c], tick_, n_ticks);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& error : errors) {
            if (error) std::rethrow_exception(error);
        }
    }
    tick_ += n_ticks;
}

SampleTrace ExecutionEngine::capture(std::uint32_t channel, pulse::Tick window,
                                     std::uint32_t budget) {
    if (budget < 1) throw EngineError("capture budget must be >= 1 sample");
    if (budget > device_.capture_memory) {
        throw EngineError("capture budget exceeds capture memory (" +
                          std::to_string(device_.capture_memory) + " samples)");
    }
    auto& ch = channels_[local(channel)];
    if (!armed_) throw EngineError("engine not armed");
    arm_capture(ch, tick_, window, budget, channel);
    run(window);
    SampleTrace trace = std::move(ch.completed.back());
    ch.completed.pop_back();
    return trace;
}

std::vector<SampleTrace> ExecutionEngine::take_completed_captures() {
    std::vector<SampleTrace> out;
    for (auto& ch : channels_) {
        for (auto& trace : ch.completed) out.push_back(std::move(trace));
        ch.completed.clear();
    }
    return out;
}

const std::vector<pulse::Tick>& ExecutionEngine::play_in_events(std::uint32_t channel) const {
    return channels_[local(channel)].in_events;
}

const std::vector<pulse::Tick>& ExecutionEngine::play_out_events(std::uint32_t channel) const {
    return channels_[local(channel)].out_events;
}

std::uint64_t ExecutionEngine::instructions_fired() const {
    std::uint64_t fired = 0;
    for (const auto& ch : channels_) fired += ch.fired;
    return fired;
}

std::uint64_t ExecutionEngine::instructions_remaining() const {
    std::uint64_t remaining = 0;
    for (const auto& ch : channels_) remaining += ch.queue.size();
    return remaining;
}

EngineCluster::EngineCluster(const DeviceConfig& device) : device_(device) {
    device_.validate();
    engines_.reserve(device_.units);
    for (std::uint32_t unit = 0; unit < device_.units; ++unit) {
        engines_.emplace_back(device_, unit);
    }
}

void EngineCluster::load(const pulse::CompiledProgram& compiled) {
    for (auto& engine : engines_) engine.load(compiled);
}

void EngineCluster::sync_start() {
    for (const auto& engine : engines_) {
        if (!engine.armed()) {
            throw EngineError("unit " + std::to_string(engine.unit()) + " not armed");
        }
        if (engine.current_tick() != 0) {
            throw EngineError("unit " + std::to_string(engine.unit()) + " already running");
        }
    }
}

void EngineCluster::run(pulse::Tick n_ticks) {
    for (auto& engine : engines_) engine.run(n_ticks);
}

std::vector<SampleTrace> EngineCluster::take_completed_captures() {
    std::vector<SampleTrace> out;
    for (auto& engine : engines_) {
        for (auto& trace : engine.take_completed_captures()) out.push_back(std::move(trace));
    }
    return out;
}

}  // namespace qcs
