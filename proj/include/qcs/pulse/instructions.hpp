#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcs/config.hpp"
#include "qcs/envelope.hpp"

namespace qcs::pulse {

using Tick = std::uint64_t;

/// Execution-unit instruction set. The 32-bit operand reuses the config-RAM
/// packing: SET_FTW carries the tuning word, SET_PHASE the phase code in the
/// high half-word, SET_AMP the Q1.15 code in the low half-word, PLAY the
/// envelope_id<<24 | length<<8 layout of config word 2. CAPTURE carries the
/// window length; the engine derives the decimation from its capture budget.
enum class Opcode : std::uint8_t {
    set_ftw = 0,
    set_phase = 1,
    set_amp = 2,
    play = 3,
    capture = 4,
    nop = 5,
};

std::string to_string(Opcode op);

struct InstructionWord {
    Tick fire_tick = 0;
    std::uint32_t channel = 0;
    Opcode opcode = Opcode::nop;
    std::uint32_t operand = 0;

    bool operator==(const InstructionWord&) const = default;
};

inline std::uint32_t pack_phase_operand(std::uint16_t phase_code) {
    return std::uint32_t{phase_code} << 16;
}
inline std::uint16_t unpack_phase_operand(std::uint32_t operand) {
    return static_cast<std::uint16_t>(operand >> 16);
}

inline std::uint32_t pack_amp_operand(std::int16_t amp_code) {
    return static_cast<std::uint16_t>(amp_code);
}
inline std::int16_t unpack_amp_operand(std::uint32_t operand) {
    return static_cast<std::int16_t>(static_cast<std::uint16_t>(operand & 0xFFFF));
}

inline std::uint32_t pack_play_operand(std::uint8_t envelope_id, std::uint16_t length) {
    return (std::uint32_t{envelope_id} << 24) | (std::uint32_t{length} << 8);
}
inline std::uint8_t play_envelope_id(std::uint32_t operand) {
    return static_cast<std::uint8_t>(operand >> 24);
}
inline std::uint16_t play_length(std::uint32_t operand) {
    return static_cast<std::uint16_t>((operand >> 8) & 0xFFFF);
}

/// Ticks a word keeps its channel busy: PLAY its envelope, CAPTURE its window.
inline Tick word_duration(const InstructionWord& w) {
    if (w.opcode == Opcode::play) return play_length(w.operand);
    if (w.opcode == Opcode::capture) return w.operand;
    return 0;
}

/// All instruction words of one execution unit, sorted by fire tick.
struct InstructionStream {
    std::uint32_t unit = 0;
    std::vector<InstructionWord> words;
    Tick total_ticks = 0;

    bool operator==(const InstructionStream&) const = default;
};

/// Scheduler output: envelope table, per-channel initial configs (the
/// config-RAM images) and one instruction stream per execution unit.
struct CompiledProgram {
    std::vector<EnvelopeSpec> envelopes;
    std::vector<std::pair<std::uint32_t, ChannelConfig>> initial_configs;
    std::vector<InstructionStream> streams;
    Tick total_ticks = 0;
};

}  // namespace qcs::pulse
