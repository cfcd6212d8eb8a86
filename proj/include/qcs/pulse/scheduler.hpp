#pragma once

#include "qcs/device.hpp"
#include "qcs/pulse/ast.hpp"
#include "qcs/pulse/instructions.hpp"

namespace qcs::pulse {

/// Compile a validated program to absolute-tick instruction streams.
///
/// Cursor rules: play advances its frame's channel by the waveform length;
/// delay advances every channel; barrier snaps the named frames' channels to
/// their common maximum; set_frequency / shift_phase / capture take zero
/// ticks and fire at the current cursor. SET_AMP words are emitted only when
/// a play changes the channel's amplitude. Deterministic: identical inputs
/// give bit-identical streams.
CompiledProgram schedule(const PulseProgram& program, const DeviceConfig& device);

/// One line per instruction word: tick, channel, opcode, decoded operand.
std::string format_listing(const CompiledProgram& compiled);

}  // namespace qcs::pulse
