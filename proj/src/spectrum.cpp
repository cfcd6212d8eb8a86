#include "qcs/spectrum.hpp"

#include <cmath>
#include <complex>

#include "qcs/errors.hpp"
#include "qcs/fft.hpp"

namespace qcs {
namespace {

Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

Eigen::ArrayXd power_spectrum(const Eigen::ArrayXd& samples, WindowKind window) {
    if (samples.size() == 0) throw Error("empty input to power_spectrum");

    const Eigen::Index n = samples.size();
    const Eigen::Index padded = next_pow2(n);
    const Eigen::ArrayXd w = make_window(window, n);

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(padded);
    for (Eigen::Index k = 0; k < n; ++k) x[k] = samples[k] * w[k];

    const Eigen::VectorXcd spectrum = fft(x);
    Eigen::ArrayXd power(padded / 2 + 1);
    for (Eigen::Index m = 0; m <= padded / 2; ++m) {
        const double p = std::norm(spectrum[m]);
        power[m] = p > 0.0 ? std::max(10.0 * std::log10(p), kDbFloor) : kDbFloor;
    }
    return power;
}

SpectralReport spectral_check(const Eigen::ArrayXd& trace, double expected_freq_hz,
                              double sample_rate_hz, double spur_threshold_dbc) {
    if (trace.size() < 256) throw Error("spectral_check needs at least 256 samples");
    if (!(expected_freq_hz < sample_rate_hz / 2.0)) {
        throw Error("expected frequency is outside the Nyquist band");
    }

    const Eigen::Index fft_size = next_pow2(trace.size());
    const Eigen::ArrayXd power = power_spectrum(trace, WindowKind::blackman);

    SpectralReport report;
    report.fft_size = static_cast<std::size_t>(fft_size);
    report.window = WindowKind::blackman;
    report.spur_threshold_dbc = spur_threshold_dbc;
    report.expected_bin = static_cast<std::size_t>(
        std::llround(expected_freq_hz / sample_rate_hz * static_cast<double>(fft_size)));

    Eigen::Index dominant = 0;
    report.dominant_power_db = power.maxCoeff(&dominant);
    report.dominant_bin = static_cast<std::size_t>(dominant);

    const auto lo = report.expected_bin >= report.exclusion_halfwidth
                        ? report.expected_bin - report.exclusion_halfwidth
                        : 0;
    const auto hi = report.expected_bin + report.exclusion_halfwidth;
    double worst = kDbFloor;
    std::size_t worst_bin = 0;
    for (Eigen::Index m = 0; m < power.size(); ++m) {
        const auto bin = static_cast<std::size_t>(m);
        if (bin >= lo && bin <= hi) continue;
        if (power[m] > worst) {
            worst = power[m];
            worst_bin = bin;
        }
    }
    report.worst_spur_bin = worst_bin;
    report.worst_spur_dbc = worst - report.dominant_power_db;
    report.pass = report.dominant_bin == report.expected_bin &&
                  report.worst_spur_dbc <= spur_threshold_dbc;
    return report;
}

}  // namespace qcs
