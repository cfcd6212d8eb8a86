#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "qcs/config.hpp"
#include "qcs/envelope.hpp"

namespace qcs {

/// Real-valued channel description for the reference model.
struct ToneParams {
    double freq_hz = 0.0;
    double sample_rate_hz = 1e9;
    double amplitude = 0.0;  // full-scale units
    double phase_rad = 0.0;
    EnvelopeSpec envelope;
};

/// Exact map from the fixed-point config to reference-model reals:
/// f = ftw/2^32 * fs, a = code/2^15, phi = 2 pi * offset/2^16.
ToneParams to_reference(const ChannelConfig& cfg, const EnvelopeSpec& envelope,
                        double sample_rate_hz);

/// Reference model, double precision throughout:
/// y[i] = env(i) * a * sin(2 pi (f/fs) i + phi0), zero once the envelope ends.
Eigen::ArrayXd render_reference(const ToneParams& params, Eigen::Index n);

/// Fixed-point model: 32-bit phase accumulator, 12-bit sine table, then the
/// amplitude and envelope Q1.15 multiplies in that order, nearest-even
/// rounding and saturation at each stage. Integer-only and bit-exact.
/// Samples past the envelope length are zero; the accumulator keeps running.
std::vector<std::int16_t> render_fixed(const ChannelConfig& cfg, const EnvelopeSpec& envelope,
                                       std::size_t n);

/// Q1.15 codes as full-scale reals (code / 2^15).
Eigen::ArrayXd to_real(const std::vector<std::int16_t>& samples);

}  // namespace qcs
