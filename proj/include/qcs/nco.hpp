#pragma once

#include <array>
#include <cstdint>

#include "qcs/errors.hpp"

namespace qcs {

inline constexpr int kPhaseAccBits = 32;
inline constexpr int kLutAddressBits = 12;
inline constexpr std::size_t kLutSize = std::size_t{1} << kLutAddressBits;

/// Quarter-less full sine table: lut[k] = round(sin(2 pi k / 4096) * 32767).
const std::array<std::int16_t, kLutSize>& sine_lut();

/// Frequency tuning word for a 32-bit accumulator: round(f/fs * 2^32),
/// half away from zero. Realized frequency is ftw * fs / 2^32.
std::uint32_t ftw_from_freq(double freq_hz, double sample_rate_hz);

/// Phase-accumulator oscillator. Each sample reads the table at the top 12
/// bits of (accumulator + phase_offset << 16), then advances the accumulator
/// by the tuning word. Integer-only; the accumulator after n samples is
/// exactly n * ftw mod 2^32.
class Nco {
  public:
    Nco() = default;

    void set_ftw(std::uint32_t ftw) { ftw_ = ftw; }
    void set_phase_offset(std::uint16_t turns) { phase_offset_ = turns; }
    std::uint32_t ftw() const { return ftw_; }
    std::uint16_t phase_offset() const { return phase_offset_; }
    std::uint32_t accumulator() const { return acc_; }

    void reset(std::uint32_t acc = 0) { acc_ = acc; }

    /// Raw Q1.15 sine sample for the current phase; advances the accumulator.
    std::int16_t step() {
        const std::uint32_t phase = acc_ + (std::uint32_t{phase_offset_} << 16);
        acc_ += ftw_;  // wraps mod 2^32
        return sine_lut()[phase >> (kPhaseAccBits - kLutAddressBits)];
    }

  private:
    std::uint32_t acc_ = 0;
    std::uint32_t ftw_ = 0;
    std::uint16_t phase_offset_ = 0;
};

}  // namespace qcs
