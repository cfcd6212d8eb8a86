#include "qcs/pulse/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "qcs/fixed.hpp"
#include "qcs/nco.hpp"

namespace qcs::pulse {

std::string to_string(Opcode op) {
    switch (op) {
        case Opcode::set_ftw: return "SET_FTW";
        case Opcode::set_phase: return "SET_PHASE";
        case Opcode::set_amp: return "SET_AMP";
        case Opcode::play: return "PLAY";
        case Opcode::capture: return "CAPTURE";
        case Opcode::nop: return "NOP";
    }
    return "?";
}

namespace {

std::uint16_t phase_code_from_radians(double phase_rad) {
    const double turns = phase_rad / (2.0 * M_PI);
    const double wrapped = turns - std::floor(turns);
    const auto code = static_cast<std::uint64_t>(std::llround(wrapped * 65536.0));
    return static_cast<std::uint16_t>(code & 0xFFFF);
}

struct ChannelCursor {
    Tick tick = 0;
    Tick capture_free_at = 0;
    std::int16_t amp_code = 0;
    std::uint16_t phase_code = 0;
    std::vector<InstructionWord> words;
};

class ScheduleBuilder {
  public:
    ScheduleBuilder(const PulseProgram& program, const DeviceConfig& device)
        : program_(program), device_(device) {}

    CompiledProgram build() {
        device_.validate();
        assign_envelopes();
        init_channels();
        for (const auto& stmt : program_.body) std::visit(*this, stmt);
        return finish();
    }

    void operator()(const PlayStmt& s) {
        const auto& frame = frame_of(s.frame);
        const auto& wf = waveform_of(s.waveform);
        auto& ch = cursor(frame.channel);
        const auto amp_code = static_cast<std::int16_t>(float_to_fixed(s.amplitude));
        if (amp_code != ch.amp_code) {
            emit(frame.channel, Opcode::set_amp, pack_amp_operand(amp_code));
            ch.amp_code = amp_code;
        }
        const auto env_it = envelope_ids_.find(s.waveform);
        if (env_it == envelope_ids_.end()) {
            throw ScheduleError("undeclared waveform " + s.waveform);
        }
        emit(frame.channel, Opcode::play,
             pack_play_operand(env_it->second, static_cast<std::uint16_t>(wf.length)));
        advance(ch, wf.length);
    }

    void operator()(const DelayStmt& s) {
        for (auto& [channel, ch] : channels_) advance(ch, s.ticks);
    }

    void operator()(const SetFrequencyStmt& s) {
        const auto& frame = frame_of(s.frame);
        emit(frame.channel, Opcode::set_ftw, tuning_word(s.freq_hz));
    }

    void operator()(const ShiftPhaseStmt& s) {
        const auto& frame = frame_of(s.frame);
        auto& ch = cursor(frame.channel);
        const std::uint16_t delta = phase_code_from_radians(s.delta_rad);
        ch.phase_code = static_cast<std::uint16_t>(ch.phase_code + delta);
        emit(frame.channel, Opcode::set_phase, pack_phase_operand(ch.phase_code));
    }

    void operator()(const BarrierStmt& s) {
        Tick target = 0;
        for (const auto& name : s.frames) {
            target = std::max(target, cursor(frame_of(name).channel).tick);
        }
        for (const auto& name : s.frames) {
            cursor(frame_of(name).channel).tick = target;
        }
    }

    void operator()(const CaptureStmt& s) {
        const auto& frame = frame_of(s.frame);
        auto& ch = cursor(frame.channel);
        if (ch.tick < ch.capture_free_at) {
            throw ScheduleError("overlapping captures on channel " +
                                std::to_string(frame.channel) + " at tick " +
                                std::to_string(ch.tick));
        }
        ch.capture_free_at = ch.tick + s.length;
        emit(frame.channel, Opcode::capture, s.length);
    }

  private:
    void assign_envelopes() {
        if (program_.waveforms.size() > 256) {
            throw ScheduleError("too many waveforms (envelope table holds 256)");
        }
        for (const auto& wf : program_.waveforms) {
            EnvelopeSpec spec;
            spec.kind = wf.kind;
            spec.length = static_cast<std::uint16_t>(wf.length);
            if (auto it = wf.params.find("sigma"); it != wf.params.end()) {
                spec.sigma = it->second;
            }
            envelope_ids_[wf.name] = static_cast<std::uint8_t>(envelopes_.size());
            envelopes_.push_back(spec);
        }
    }

    void init_channels() {
        for (const auto& frame : program_.frames) {
            if (frame.channel >= device_.total_channels()) {
                throw ScheduleError("channel " + std::to_string(frame.channel) +
                                    " not in device config (" +
                                    std::to_string(device_.total_channels()) + " channels)");
            }
            ChannelCursor ch;
            ch.phase_code = phase_code_from_radians(frame.phase_rad);
            channels_.emplace(frame.channel, std::move(ch));
            ChannelConfig cfg;
            cfg.ftw = tuning_word(frame.freq_hz);
            cfg.phase_offset = channels_.at(frame.channel).phase_code;
            initial_configs_.emplace_back(frame.channel, cfg);
        }
    }

    std::uint32_t tuning_word(double freq_hz) const {
        try {
            return ftw_from_freq(freq_hz, device_.sample_rate_hz);
        } catch (const Error& e) {
            throw ScheduleError(e.what());
        }
    }

    const FrameDecl& frame_of(const std::string& name) const {
        if (const auto* frame = program_.find_frame(name)) return *frame;
        throw ScheduleError("undeclared frame " + name);
    }

    const WaveformDecl& waveform_of(const std::string& name) const {
        if (const auto* wf = program_.find_waveform(name)) return *wf;
        throw ScheduleError("undeclared waveform " + name);
    }

    ChannelCursor& cursor(std::uint32_t channel) {
        const auto it = channels_.find(channel);
        if (it == channels_.end()) {
            throw ScheduleError("channel " + std::to_string(channel) + " has no frame");
        }
        return it->second;
    }

    void advance(ChannelCursor& ch, Tick ticks) {
        if (ch.tick > std::numeric_limits<Tick>::max() - ticks) {
            throw ScheduleError("tick overflow");
        }
        ch.tick += ticks;
    }

    void emit(std::uint32_t channel, Opcode opcode, std::uint32_t operand) {
        auto& ch = cursor(channel);
        ch.words.push_back({ch.tick, channel, opcode, operand});
        if (ch.words.size() > device_.queue_depth) {
            throw ScheduleError("queue overflow on channel " + std::to_string(channel) +
                                " at tick " + std::to_string(ch.tick) + ": depth " +
                                std::to_string(device_.queue_depth) + " exceeded");
        }
    }

    CompiledProgram finish() {
        CompiledProgram out;
        out.envelopes = std::move(envelopes_);
        out.initial_configs = std::move(initial_configs_);

        std::map<std::uint32_t, InstructionStream> streams;
        for (auto& [channel, ch] : channels_) {
            const std::uint32_t unit = device_.unit_of(channel);
            auto& stream = streams[unit];
            stream.unit = unit;
            for (auto& word : ch.words) {
                out.total_ticks = std::max(out.total_ticks, word.fire_tick + word_duration(word));
                stream.words.push_back(word);
            }
        }
        for (auto& [unit, stream] : streams) {
            std::stable_sort(stream.words.begin(), stream.words.end(),
                             [](const InstructionWord& a, const InstructionWord& b) {
                                 return a.fire_tick < b.fire_tick;
                             });
            stream.total_ticks = 0;
            for (const auto& word : stream.words) {
                stream.total_ticks =
                    std::max(stream.total_ticks, word.fire_tick + word_duration(word));
            }
            out.streams.push_back(std::move(stream));
        }
        return out;
    }

    const PulseProgram& program_;
    DeviceConfig device_;
    std::map<std::string, std::uint8_t> envelope_ids_;
    std::vector<EnvelopeSpec> envelopes_;
    std::vector<std::pair<std::uint32_t, ChannelConfig>> initial_configs_;
    std::map<std::uint32_t, ChannelCursor> channels_;
};

}  // namespace

CompiledProgram schedule(const PulseProgram& program, const DeviceConfig& device) {
    return ScheduleBuilder(program, device).build();
}

std::string format_listing(const CompiledProgram& compiled) {
    std::ostringstream out;
    for (const auto& stream : compiled.streams) {
        out << "unit " << stream.unit << " (" << stream.words.size() << " words, "
            << stream.total_ticks << " ticks)\n";
        for (const auto& w : stream.words) {
            out << "  tick " << w.fire_tick << "  ch " << w.channel << "  " << to_string(w.opcode);
            switch (w.opcode) {
                case Opcode::set_ftw: out << " ftw=" << w.operand; break;
                case Opcode::set_phase: out << " phase=" << unpack_phase_operand(w.operand); break;
                case Opcode::set_amp: out << " amp=" << unpack_amp_operand(w.operand); break;
                case Opcode::play:
                    out << " env=" << static_cast<int>(play_envelope_id(w.operand))
                        << " len=" << play_length(w.operand);
                    break;
                case Opcode::capture: out << " window=" << w.operand; break;
                case Opcode::nop: break;
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace qcs::pulse
