#include "qcs/pulse/stream_io.hpp"

#include <cstring>
#include <fstream>

#include "qcs/io/binary.hpp"

namespace qcs::pulse {

using io::get_le;
using io::put_le;

void write_compiled(std::ostream& out, const CompiledProgram& compiled) {
    out.write("QCIS", 4);
    put_le<std::uint16_t>(out, kStreamVersion);
    put_le<std::uint64_t>(out, compiled.total_ticks);

    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(compiled.envelopes.size()));
    for (const auto& env : compiled.envelopes) {
        put_le<std::uint8_t>(out, static_cast<std::uint8_t>(env.kind));
        put_le<std::uint16_t>(out, env.length);
        put_le<std::uint8_t>(out, env.sigma ? 1 : 0);
        if (env.sigma) put_le<double>(out, *env.sigma);
    }

    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(compiled.initial_configs.size()));
    for (const auto& [channel, cfg] : compiled.initial_configs) {
        put_le<std::uint32_t>(out, channel);
        const ConfigImage image = pack_config(cfg);
        for (const auto word : image.words) put_le<std::uint32_t>(out, word);
    }

    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(compiled.streams.size()));
    for (const auto& stream : compiled.streams) {
        put_le<std::uint32_t>(out, stream.unit);
        put_le<std::uint64_t>(out, stream.total_ticks);
        put_le<std::uint64_t>(out, stream.words.size());
        for (const auto& word : stream.words) {
            put_le<std::uint64_t>(out, word.fire_tick);
            put_le<std::uint32_t>(out, word.channel);
            put_le<std::uint8_t>(out, static_cast<std::uint8_t>(word.opcode));
            put_le<std::uint32_t>(out, word.operand);
        }
    }
}

CompiledProgram read_compiled(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "QCIS", 4) != 0) throw Error("not a QCIS stream file");
    const auto version = get_le<std::uint16_t>(in);
    if (version != kStreamVersion) {
        throw Error("unsupported stream version " + std::to_string(version));
    }

    CompiledProgram compiled;
    compiled.total_ticks = get_le<std::uint64_t>(in);

    const auto envelope_count = get_le<std::uint16_t>(in);
    for (std::uint16_t i = 0; i < envelope_count; ++i) {
        EnvelopeSpec env;
        const auto kind = get_le<std::uint8_t>(in);
        if (kind > 2) throw Error("unknown envelope kind in stream file");
        env.kind = static_cast<EnvelopeKind>(kind);
        env.length = get_le<std::uint16_t>(in);
        if (get_le<std::uint8_t>(in) != 0) env.sigma = get_le<double>(in);
        compiled.envelopes.push_back(env);
    }

    const auto config_count = get_le<std::uint16_t>(in);
    for (std::uint16_t i = 0; i < config_count; ++i) {
        const auto channel = get_le<std::uint32_t>(in);
        ConfigImage image;
        for (auto& word : image.words) word = get_le<std::uint32_t>(in);
        compiled.initial_configs.emplace_back(channel, unpack_config(image));
    }

    const auto stream_count = get_le<std::uint16_t>(in);
    for (std::uint16_t i = 0; i < stream_count; ++i) {
        InstructionStream stream;
        stream.unit = get_le<std::uint32_t>(in);
        stream.total_ticks = get_le<std::uint64_t>(in);
        const auto word_count = get_le<std::uint64_t>(in);
        stream.words.reserve(word_count);
        for (std::uint64_t w = 0; w < word_count; ++w) {
            InstructionWord word;
            word.fire_tick = get_le<std::uint64_t>(in);
            word.channel = get_le<std::uint32_t>(in);
            const auto opcode = get_le<std::uint8_t>(in);
            if (opcode > 5) throw Error("unknown opcode in stream file");
            word.opcode = static_cast<Opcode>(opcode);
            word.operand = get_le<std::uint32_t>(in);
            stream.words.push_back(word);
        }
        compiled.streams.push_back(std::move(stream));
    }
    return compiled;
}

void write_compiled_file(const std::string& path, const CompiledProgram& compiled) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_compiled(out, compiled);
    if (!out) throw Error("failed writing " + path);
}

CompiledProgram read_compiled_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_compiled(in);
}

}  // namespace qcs::pulse
