#include "qcs/config.hpp"

namespace qcs {

ConfigImage pack_config(const ChannelConfig& cfg) {
    ConfigImage image;
    image.words[0] = cfg.ftw;
    image.words[1] = (std::uint32_t{cfg.phase_offset} << 16) |
                     static_cast<std::uint16_t>(cfg.amplitude);
    image.words[2] = (std::uint32_t{cfg.envelope_id} << 24) |
                     (std::uint32_t{cfg.envelope_len} << 8);
    return image;
}

ChannelConfig unpack_config(const ConfigImage& image) {
    if ((image.words[2] & 0xFF) != 0) {
        throw Error("config image reserved byte must be zero");
    }
    ChannelConfig cfg;
    cfg.ftw = image.words[0];
    cfg.phase_offset = static_cast<std::uint16_t>(image.words[1] >> 16);
    cfg.amplitude = static_cast<std::int16_t>(static_cast<std::uint16_t>(image.words[1] & 0xFFFF));
    cfg.envelope_id = static_cast<std::uint8_t>(image.words[2] >> 24);
    cfg.envelope_len = static_cast<std::uint16_t>((image.words[2] >> 8) & 0xFFFF);
    return cfg;
}

}  // namespace qcs
