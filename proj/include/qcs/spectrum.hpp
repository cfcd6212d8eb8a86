#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "qcs/windows.hpp"

namespace qcs {

inline constexpr double kDbFloor = -300.0;

/// Single-sided power spectrum in dB: window, zero-pad to a power of two,
/// transform, then 10 log10 |X[m]|^2 for m in [0, N/2], clamped at -300 dB.
Eigen::ArrayXd power_spectrum(const Eigen::ArrayXd& samples, WindowKind window);

/// Spectral-purity verdict for a single expected tone.
struct SpectralReport {
    std::size_t fft_size = 0;
    WindowKind window = WindowKind::blackman;
    std::size_t dominant_bin = 0;
    std::size_t expected_bin = 0;
    double dominant_power_db = 0.0;
    std::size_t worst_spur_bin = 0;
    double worst_spur_dbc = 0.0;
    double spur_threshold_dbc = 0.0;
    std::size_t exclusion_halfwidth = 3;
    bool pass = false;
};

/// Blackman-windowed purity check: the dominant bin must be the expected one
/// and every bin outside expected_bin +/- 3 must sit below the spur threshold
/// relative to the carrier. Trace must hold at least 256 samples and the tone
/// must be inside Nyquist.
SpectralReport spectral_check(const Eigen::ArrayXd& trace, double expected_freq_hz,
                              double sample_rate_hz, double spur_threshold_dbc);

}  // namespace qcs
