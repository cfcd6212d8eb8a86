#pragma once

#include <cmath>
#include <cstdint>

namespace qcs {

/// Fixed-point format descriptor: `total_bits` wide, `fraction_bits` of them
/// fractional, optionally signed (two's complement). A code c represents the
/// real value c * 2^-fraction_bits.
struct FixedFormat {
    int total_bits;
    int fraction_bits;
    bool is_signed;

    constexpr bool valid() const {
        return total_bits >= 1 && total_bits <= 32 && fraction_bits >= 0 &&
               fraction_bits <= total_bits - (is_signed ? 1 : 0);
    }

    constexpr std::int64_t min_code() const {
        return is_signed ? -(std::int64_t{1} << (total_bits - 1)) : 0;
    }

    constexpr std::int64_t max_code() const {
        return (std::int64_t{1} << (total_bits - (is_signed ? 1 : 0))) - 1;
    }

    constexpr double resolution() const { return std::exp2(-fraction_bits); }
};

/// Q1.15: the normalized signal format used throughout the generation chain.
inline constexpr FixedFormat kQ15{16, 15, true};

/// Round to nearest, ties to even. Implemented explicitly so results do not
/// depend on the FPU rounding mode.
inline std::int64_t round_half_even(double x) {
    const double f = std::floor(x);
    const double r = x - f;
    auto lo = static_cast<std::int64_t>(f);
    if (r > 0.5) return lo + 1;
    if (r < 0.5) return lo;
    return (lo % 2 == 0) ? lo : lo + 1;
}

/// Convert a real to the nearest representable code, ties to even, saturating
/// at the format bounds.
inline std::int64_t float_to_fixed(double x, const FixedFormat& fmt = kQ15) {
    const double scaled = std::ldexp(x, fmt.fraction_bits);
    if (!(scaled > static_cast<double>(fmt.min_code()))) return fmt.min_code();
    if (!(scaled < static_cast<double>(fmt.max_code()))) return fmt.max_code();
    const std::int64_t code = round_half_even(scaled);
    if (code < fmt.min_code()) return fmt.min_code();
    if (code > fmt.max_code()) return fmt.max_code();
    return code;
}

/// Exact inverse mapping: code * 2^-fraction_bits.
inline double fixed_to_float(std::int64_t code, const FixedFormat& fmt = kQ15) {
    return std::ldexp(static_cast<double>(code), -fmt.fraction_bits);
}

/// Q1.15 product with nearest-even rounding of the 2^-15 rescale and
/// saturation to [-32768, 32767]. Integer-only, bit-exact.
inline std::int16_t q15_mul(std::int16_t a, std::int16_t b) {
    const std::int32_t p = std::int32_t{a} * std::int32_t{b};
    std::int32_t q = p >> 15;  // floor
    const std::int32_t r = p & 0x7FFF;
    if (r > 0x4000 || (r == 0x4000 && (q & 1))) ++q;
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    return static_cast<std::int16_t>(q);
}

}  // namespace qcs
