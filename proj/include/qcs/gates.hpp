#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcs/qubit/two_level.hpp"

namespace qcs {

enum class GateName { init0, init1, x, h };

std::string to_string(GateName gate);
std::optional<GateName> gate_from_string(const std::string& name);

/// Calibrated pulse parameters for one gate.
struct PulseEntry {
    double amplitude = 0.0;
    double duration_s = 0.0;
    double phase_rad = 0.0;
};

/// Per-gate pulse table produced by calibration.
struct CalibrationTable {
    std::map<GateName, PulseEntry> entries;
    double coupling = 0.0;         // rad/s per unit amplitude
    std::uint64_t timestamp = 0;   // logical stamp; callers keep outputs deterministic

    const PulseEntry& require(GateName gate) const;
};

struct ResetOp {};
struct DriveOp {
    double amplitude = 0.0;
    double duration_s = 0.0;
    double phase_rad = 0.0;
};
struct PhaseShiftOp {
    double delta_rad = 0.0;
};

using GateOp = std::variant<ResetOp, DriveOp, PhaseShiftOp>;

/// Pulse-level gate decompositions: X is one pi pulse; H is a pi/2 rotation
/// about y (drive phase pi/2, half duration) followed by a pi frame phase
/// shift (virtual Z); init0 is a reset marker; init1 is reset + X.
std::vector<GateOp> lower_gate(GateName gate, const CalibrationTable& cal);

/// Run a fragment on the two-level model: resets load |0>, drives evolve with
/// rabi_rate = coupling * amplitude, phase shifts rotate the drive frame.
QubitState apply_gate_ops(const std::vector<GateOp>& ops, const CalibrationTable& cal,
                          QubitState state = QubitState::ground());

}  // namespace qcs
