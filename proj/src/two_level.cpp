#include "qcs/qubit/two_level.hpp"

#include <cmath>

#include "qcs/qubit/prng.hpp"

namespace qcs {

QubitState evolve(const QubitState& state, const DriveParams& drive) {
    if (state.norm_error() > 1e-9) throw Error("input state is not normalized");
    if (drive.duration_s < 0.0) throw Error("drive duration must be non-negative");
    if (drive.rabi_rate < 0.0) throw Error("rabi rate must be non-negative");

    const double generalized = std::hypot(drive.rabi_rate, drive.detuning);
    if (generalized == 0.0 || drive.duration_s == 0.0) return state;

    const double half_angle = 0.5 * generalized * drive.duration_s;
    const double c = std::cos(half_angle);
    const double s = std::sin(half_angle);
    const double nx = drive.rabi_rate * std::cos(drive.phase_rad) / generalized;
    const double ny = drive.rabi_rate * std::sin(drive.phase_rad) / generalized;
    const double nz = drive.detuning / generalized;

    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd u;
    u << c - i * s * nz, -i * s * (nx - i * ny),
        -i * s * (nx + i * ny), c + i * s * nz;

    QubitState out;
    out.amplitudes = u * state.amplitudes;
    return out;
}

std::uint64_t measure(const QubitState& state, std::uint64_t shots, std::uint64_t seed,
                      double depolarizing) {
    if (shots < 1) throw Error("measure needs at least one shot");
    double p = state.p1();
    p = p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);

    Prng rng(seed);
    std::uint64_t ones = 0;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        if (depolarizing > 0.0 && rng.uniform() < depolarizing) {
            ones += rng.uniform() < 0.5 ? 1 : 0;
        } else {
            ones += rng.uniform() < p ? 1 : 0;
        }
    }
    return ones;
}

}  // namespace qcs
