#include "qcs/gates.hpp"

#include <cmath>

namespace qcs {

std::string to_string(GateName gate) {
    switch (gate) {
        case GateName::init0: return "init0";
        case GateName::init1: return "init1";
        case GateName::x: return "X";
        case GateName::h: return "H";
    }
    return "?";
}

std::optional<GateName> gate_from_string(const std::string& name) {
    if (name == "init0") return GateName::init0;
    if (name == "init1") return GateName::init1;
    if (name == "X" || name == "x") return GateName::x;
    if (name == "H" || name == "h") return GateName::h;
    return std::nullopt;
}

const PulseEntry& CalibrationTable::require(GateName gate) const {
    const auto it = entries.find(gate);
    if (it == entries.end()) {
        throw Error("missing calibration entry for gate " + to_string(gate));
    }
    return it->second;
}

std::vector<GateOp> lower_gate(GateName gate, const CalibrationTable& cal) {
    switch (gate) {
        case GateName::init0:
            return {ResetOp{}};
        case GateName::init1: {
            auto ops = lower_gate(GateName::init0, cal);
            const auto x = lower_gate(GateName::x, cal);
            ops.insert(ops.end(), x.begin(), x.end());
            return ops;
        }
        case GateName::x: {
            const auto& pi = cal.require(GateName::x);
            return {DriveOp{pi.amplitude, pi.duration_s, pi.phase_rad}};
        }
        case GateName::h: {
            const auto& half = cal.require(GateName::h);
            return {DriveOp{half.amplitude, half.duration_s, half.phase_rad},
                    PhaseShiftOp{M_PI}};
        }
    }
    throw Error("unknown gate");
}

QubitState apply_gate_ops(const std::vector<GateOp>& ops, const CalibrationTable& cal,
                          QubitState state) {
    double frame_phase = 0.0;
    for (const auto& op : ops) {
        if (std::holds_alternative<ResetOp>(op)) {
            state = QubitState::ground();
        } else if (const auto* drive = std::get_if<DriveOp>(&op)) {
            DriveParams params;
            params.rabi_rate = cal.coupling * drive->amplitude;
            params.duration_s = drive->duration_s;
            params.phase_rad = drive->phase_rad + frame_phase;
            state = evolve(state, params);
        } else if (const auto* shift = std::get_if<PhaseShiftOp>(&op)) {
            frame_phase += shift->delta_rad;
        }
    }
    return state;
}

}  // namespace qcs
