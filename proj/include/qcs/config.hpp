#pragma once

#include <array>
#include <cstdint>

#include "qcs/errors.hpp"

namespace qcs {

/// Live parameters of one signal-generator channel.
struct ChannelConfig {
    std::uint32_t ftw = 0;           // frequency tuning word
    std::uint16_t phase_offset = 0;  // turns: 2 pi * k / 2^16 radians
    std::int16_t amplitude = 0;      // Q1.15
    std::uint8_t envelope_id = 0;
    std::uint16_t envelope_len = 0;

    bool operator==(const ChannelConfig&) const = default;
};

/// Bit-exact packed config-RAM image, three 32-bit little-endian words:
///   word0 = ftw
///   word1 = phase_offset << 16 | amplitude (u16 two's complement)
///   word2 = envelope_id << 24 | envelope_len << 8 | reserved (0x00)
struct ConfigImage {
    std::array<std::uint32_t, 3> words{};

    bool operator==(const ConfigImage&) const = default;
};

ConfigImage pack_config(const ChannelConfig& cfg);

/// Inverse of pack_config. Rejects images whose reserved byte is nonzero.
ChannelConfig unpack_config(const ConfigImage& image);

}  // namespace qcs
