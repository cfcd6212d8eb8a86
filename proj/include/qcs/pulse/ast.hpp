#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qcs/envelope.hpp"

namespace qcs::pulse {

/// `frame NAME ch=INT freq=FLOAT phase=FLOAT;`
struct FrameDecl {
    std::string name;
    std::uint32_t channel = 0;
    double freq_hz = 0.0;
    double phase_rad = 0.0;
};

/// `waveform NAME KIND len=INT {key=value};`
struct WaveformDecl {
    std::string name;
    EnvelopeKind kind = EnvelopeKind::rect;
    std::uint32_t length = 1;
    std::map<std::string, double> params;
};

struct PlayStmt {
    std::string frame;
    std::string waveform;
    double amplitude = 1.0;
};

struct DelayStmt {
    std::uint64_t ticks = 0;
};

struct SetFrequencyStmt {
    std::string frame;
    double freq_hz = 0.0;
};

struct ShiftPhaseStmt {
    std::string frame;
    double delta_rad = 0.0;
};

struct BarrierStmt {
    std::vector<std::string> frames;
};

struct CaptureStmt {
    std::string frame;
    std::uint32_t length = 0;
};

using Statement =
    std::variant<PlayStmt, DelayStmt, SetFrequencyStmt, ShiftPhaseStmt, BarrierStmt, CaptureStmt>;

struct PulseProgram {
    std::vector<FrameDecl> frames;
    std::vector<WaveformDecl> waveforms;
    std::vector<Statement> body;

    const FrameDecl* find_frame(const std::string& name) const;
    const WaveformDecl* find_waveform(const std::string& name) const;
};

}  // namespace qcs::pulse
