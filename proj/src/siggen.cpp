#include "qcs/siggen.hpp"

#include <cmath>

#include "qcs/fixed.hpp"
#include "qcs/nco.hpp"

namespace qcs {

ToneParams to_reference(const ChannelConfig& cfg, const EnvelopeSpec& envelope,
                        double sample_rate_hz) {
    ToneParams p;
    p.freq_hz = std::ldexp(static_cast<double>(cfg.ftw), -32) * sample_rate_hz;
    p.sample_rate_hz = sample_rate_hz;
    p.amplitude = fixed_to_float(cfg.amplitude);
    p.phase_rad = 2.0 * M_PI * std::ldexp(static_cast<double>(cfg.phase_offset), -16);
    p.envelope = envelope;
    return p;
}

Eigen::ArrayXd render_reference(const ToneParams& params, Eigen::Index n) {
    Eigen::ArrayXd y = Eigen::ArrayXd::Zero(n);
    const double w = 2.0 * M_PI * params.freq_hz / params.sample_rate_hz;
    const Eigen::Index active = std::min<Eigen::Index>(n, params.envelope.length);
    for (Eigen::Index i = 0; i < active; ++i) {
        y[i] = params.envelope.at(static_cast<std::uint32_t>(i)) * params.amplitude *
               std::sin(w * static_cast<double>(i) + params.phase_rad);
    }
    return y;
}

std::vector<std::int16_t> render_fixed(const ChannelConfig& cfg, const EnvelopeSpec& envelope,
                                       std::size_t n) {
    Nco nco;
    nco.set_ftw(cfg.ftw);
    nco.set_phase_offset(cfg.phase_offset);
    std::vector<std::int16_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int16_t raw = nco.step();
        if (i < envelope.length) {
            const std::int16_t scaled = q15_mul(raw, cfg.amplitude);
            out[i] = q15_mul(scaled, envelope.at_fixed(static_cast<std::uint32_t>(i)));
        }
    }
    return out;
}

Eigen::ArrayXd to_real(const std::vector<std::int16_t>& samples) {
    Eigen::ArrayXd y(static_cast<Eigen::Index>(samples.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y[i] = fixed_to_float(samples[static_cast<std::size_t>(i)]);
    }
    return y;
}

}  // namespace qcs
