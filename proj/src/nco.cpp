#include "qcs/nco.hpp"

#include <cmath>

#include "qcs/fixed.hpp"

namespace qcs {

const std::array<std::int16_t, kLutSize>& sine_lut() {
    static const auto table = [] {
        std::array<std::int16_t, kLutSize> lut{};
        for (std::size_t k = 0; k < kLutSize; ++k) {
            const double v = std::sin(2.0 * M_PI * static_cast<double>(k) / kLutSize);
            lut[k] = static_cast<std::int16_t>(round_half_even(v * 32767.0));
        }
        return lut;
    }();
    return table;
}

std::uint32_t ftw_from_freq(double freq_hz, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) throw Error("sample rate must be positive");
    if (!(freq_hz >= 0.0) || !(freq_hz < sample_rate_hz / 2.0)) {
        throw Error("frequency " + std::to_string(freq_hz) + " Hz outside Nyquist range [0, " +
                    std::to_string(sample_rate_hz / 2.0) + ")");
    }
    // The 2^32 scale is exact in binary floating point; the only rounding is
    // the division itself.
    return static_cast<std::uint32_t>(std::llround(std::ldexp(freq_hz / sample_rate_hz, 32)));
}

}  // namespace qcs
