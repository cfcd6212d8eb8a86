#pragma once

#include <iosfwd>
#include <string>

#include "qcs/pulse/instructions.hpp"

namespace qcs::pulse {

/// Compiled-program container, little-endian throughout:
///   "QCIS" | version u16 | total_ticks u64
///   | envelope_count u16 | {kind u8, length u16, has_sigma u8 [, sigma f64]}
///   | config_count u16  | {channel u32, word0 u32, word1 u32, word2 u32}
///   | stream_count u16  | {unit u32, total_ticks u64, word_count u64,
///                          {fire_tick u64, channel u32, opcode u8, operand u32}}
/// Channel configs travel as packed config-RAM images.
inline constexpr std::uint16_t kStreamVersion = 1;

void write_compiled(std::ostream& out, const CompiledProgram& compiled);
CompiledProgram read_compiled(std::istream& in);

void write_compiled_file(const std::string& path, const CompiledProgram& compiled);
CompiledProgram read_compiled_file(const std::string& path);

}  // namespace qcs::pulse
