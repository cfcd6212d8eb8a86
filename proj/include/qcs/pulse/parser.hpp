#pragma once

#include <string>

#include "qcs/errors.hpp"
#include "qcs/pulse/ast.hpp"

namespace qcs::pulse {

/// Parse program text against the grammar:
///
///   program := {decl | stmt}
///   decl    := "frame" NAME "ch="INT "freq="FLOAT "phase="FLOAT ";"
///            | "waveform" NAME KIND "len="INT {param} ";"
///   stmt    := "play" NAME NAME ["amp="FLOAT] ";"
///            | "delay" INT ";"
///            | "set_frequency" NAME FLOAT ";"
///            | "shift_phase" NAME FLOAT ";"
///            | "barrier" "{" NAME {"," NAME} "}" ";"
///            | "capture" NAME "len="INT ";"
///   KIND in {rect, gaussian, blackman}
///
/// `#` starts a comment running to end of line. Validation (declared names,
/// waveform length >= 1, non-negative durations, unique declarations, one
/// frame per channel) happens before returning; all failures throw ParseError
/// with a 1-based line/column.
PulseProgram parse_program(const std::string& text);

/// Canonical text form; parse_program(pretty_print(p)) is structurally
/// identical to p.
std::string pretty_print(const PulseProgram& program);

}  // namespace qcs::pulse
