#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qcs/errors.hpp"

namespace qcs {

/// Pure state a|0> + b|1>.
struct QubitState {
    Eigen::Vector2cd amplitudes{1.0, 0.0};

    static QubitState ground() { return {}; }
    static QubitState excited() { return {Eigen::Vector2cd{0.0, 1.0}}; }

    std::complex<double> alpha() const { return amplitudes[0]; }
    std::complex<double> beta() const { return amplitudes[1]; }
    double p1() const { return std::norm(amplitudes[1]); }
    double norm_error() const { return std::abs(amplitudes.squaredNorm() - 1.0); }
};

/// Resonant-frame drive segment. rabi_rate = coupling * pulse amplitude.
struct DriveParams {
    double rabi_rate = 0.0;    // rad/s
    double detuning = 0.0;     // rad/s
    double duration_s = 0.0;
    double phase_rad = 0.0;
};

/// Closed-form rotation about (W cos phi, W sin phi, D)/Wg by angle Wg*t,
/// Wg = sqrt(W^2 + D^2). Exactly unitary up to double rounding; from |0> the
/// excited population is (W/Wg)^2 sin^2(Wg t / 2).
QubitState evolve(const QubitState& state, const DriveParams& drive);

/// Born sampling: `shots` Bernoulli draws at p = |beta|^2 from a generator
/// seeded with `seed`; returns the count of 1 outcomes. With depolarizing > 0
/// a shot is replaced by a fair coin with that probability.
std::uint64_t measure(const QubitState& state, std::uint64_t shots, std::uint64_t seed,
                      double depolarizing = 0.0);

}  // namespace qcs
