#include "qcs/engine/trace.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcs/errors.hpp"
#include "qcs/fixed.hpp"
#include "qcs/io/binary.hpp"

namespace qcs {
using io::get_le;
using io::put_le;

Eigen::ArrayXd SampleTrace::real() const {
    Eigen::ArrayXd y(static_cast<Eigen::Index>(samples.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y[i] = fixed_to_float(samples[static_cast<std::size_t>(i)]);
    }
    return y;
}

void write_trace(std::ostream& out, const SampleTrace& trace) {
    out.write("QCTR", 4);
    put_le<std::uint16_t>(out, kTraceVersion);
    put_le<std::uint16_t>(out, trace.channel);
    put_le<std::uint64_t>(out, trace.start_tick);
    put_le<double>(out, trace.sample_rate_hz);
    put_le<std::uint32_t>(out, trace.decimation);
    put_le<std::uint64_t>(out, trace.samples.size());
    for (const std::int16_t s : trace.samples) put_le<std::int16_t>(out, s);
}

SampleTrace read_trace(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "QCTR", 4) != 0) throw Error("not a QCTR trace file");
    const auto version = get_le<std::uint16_t>(in);
    if (version != kTraceVersion) {
        throw Error("unsupported trace version " + std::to_string(version));
    }
    SampleTrace trace;
    trace.channel = get_le<std::uint16_t>(in);
    trace.start_tick = get_le<std::uint64_t>(in);
    trace.sample_rate_hz = get_le<double>(in);
    trace.decimation = get_le<std::uint32_t>(in);
    const auto count = get_le<std::uint64_t>(in);
    trace.samples.resize(count);
    for (auto& s : trace.samples) s = get_le<std::int16_t>(in);
    return trace;
}

void write_trace_file(const std::string& path, const SampleTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_trace(out, trace);
    if (!out) throw Error("failed writing " + path);
}

SampleTrace read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_trace(in);
}

std::string trace_to_csv(const SampleTrace& trace) {
    std::ostringstream out;
    out << "tick,channel,fixed,real\n";
    char real[64];
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        std::snprintf(real, sizeof(real), "%.17g", fixed_to_float(trace.samples[i]));
        out << trace.tick_of(i) << "," << trace.channel << "," << trace.samples[i] << "," << real
            << "\n";
    }
    return out.str();
}

}  // namespace qcs
