#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/fixed.hpp"

namespace qcs {

enum class EnvelopeKind : std::uint8_t { rect = 0, gaussian = 1, blackman = 2 };

std::string to_string(EnvelopeKind kind);
std::optional<EnvelopeKind> envelope_kind_from_string(const std::string& name);

/// Amplitude envelope sample in [0, 1].
///
/// rect     -> 1
/// gaussian -> exp(-((i-mu)/sigma)^2 / 2), mu = (len-1)/2, sigma = (len-1)/6
///             (endpoints sit at exactly 3 sigma); sigma overridable
/// blackman -> 0.42 - 0.5 cos(2 pi i/(len-1)) + 0.08 cos(4 pi i/(len-1))
///
/// A one-sample envelope is the peak value 1 for every kind.
inline double envelope(EnvelopeKind kind, std::uint32_t len, std::uint32_t i,
                       std::optional<double> sigma = std::nullopt) {
    if (len < 1) throw Error("envelope length must be >= 1");
    if (i >= len) {
        throw Error("envelope index " + std::to_string(i) + " out of range [0, " +
                    std::to_string(len) + ")");
    }
    if (len == 1) return 1.0;
    switch (kind) {
        case EnvelopeKind::rect:
            return 1.0;
        case EnvelopeKind::gaussian: {
            const double mu = (len - 1) / 2.0;
            const double s = sigma.value_or((len - 1) / 6.0);
            const double z = (i - mu) / s;
            return std::exp(-0.5 * z * z);
        }
        case EnvelopeKind::blackman: {
            const double t = static_cast<double>(i) / (len - 1);
            const double w =
                0.42 - 0.5 * std::cos(2.0 * M_PI * t) + 0.08 * std::cos(4.0 * M_PI * t);
            return w < 0.0 ? 0.0 : (w > 1.0 ? 1.0 : w);
        }
    }
    throw Error("unknown envelope kind");
}

/// Envelope sample quantized to Q1.15 (1.0 saturates to 32767).
inline std::int16_t envelope_fixed(EnvelopeKind kind, std::uint32_t len, std::uint32_t i,
                                   std::optional<double> sigma = std::nullopt) {
    return static_cast<std::int16_t>(float_to_fixed(envelope(kind, len, i, sigma)));
}

/// A pulse envelope as stored in the engine's envelope table.
struct EnvelopeSpec {
    EnvelopeKind kind = EnvelopeKind::rect;
    std::uint16_t length = 1;
    std::optional<double> sigma;  // gaussian only

    double at(std::uint32_t i) const { return envelope(kind, length, i, sigma); }
    std::int16_t at_fixed(std::uint32_t i) const { return envelope_fixed(kind, length, i, sigma); }

    bool operator==(const EnvelopeSpec&) const = default;
};

}  // namespace qcs
