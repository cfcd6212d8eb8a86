#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcs/gates.hpp"
#include "qcs/qubit/two_level.hpp"

namespace qcs {

enum class ScanAxis { amplitude, duration, frequency };

std::string to_string(ScanAxis axis);
std::optional<ScanAxis> scan_axis_from_string(const std::string& name);

/// Drive settings shared by every scan point; the scanned axis overrides one
/// of amplitude / duration / detuning per point.
struct DriveTemplate {
    double coupling = 0.0;   // rad/s per unit amplitude
    double amplitude = 0.0;
    double duration_s = 0.0;
    double detuning = 0.0;   // rad/s
    double phase_rad = 0.0;
};

struct ScanPoint {
    double x = 0.0;
    std::uint64_t ones = 0;
    std::uint64_t shots = 0;
    double p_estimate = 0.0;
};

/// Frequency of the excited-population oscillation, in cycles per x-unit.
struct OscillationFit {
    double frequency = 0.0;
    double uncertainty = 0.0;  // one interpolated-bin width
    double peak_power = 0.0;
    double median_power = 0.0;
};

struct RabiScanResult {
    ScanAxis axis = ScanAxis::duration;
    std::vector<ScanPoint> points;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::optional<OscillationFit> fit;
    std::string fit_error;  // empty when the fit succeeded
    /// Scanned-variable value of the first population maximum, 1/(2f): the pi
    /// amplitude on an amplitude scan, the pi duration on a duration scan.
    std::optional<double> pi_parameter;
};

/// Prepare |0>, drive with the point's parameters, measure. Points get
/// independent seeds mix_seed(seed, i), so any worker partition reproduces
/// the sequential result bit for bit. Needs >= 8 points and >= 100 shots.
RabiScanResult run_rabi_scan(ScanAxis axis, const Eigen::ArrayXd& xs,
                             const DriveTemplate& drive, std::uint64_t shots, std::uint64_t seed,
                             double depolarizing = 0.0, std::uint32_t workers = 1);

/// Spectrum-peak frequency estimate for uniformly spaced (x, P) pairs:
/// mean-subtract, zero-pad 8x, locate the magnitude peak, refine with a
/// three-point parabola. Throws FitError when the data carry no oscillation
/// (peak below 3x the median bin power).
OscillationFit fit_oscillation(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ps);

/// Turn a fitted amplitude scan into a calibration table for the fixed
/// duration: kappa = 2 pi f / t, pi amplitude = pi / (kappa t); X gets the pi
/// pulse, H the same amplitude at half duration with drive phase pi/2.
CalibrationTable calibrate_pi_pulse(const RabiScanResult& scan, double duration_s,
                                    std::uint64_t timestamp = 0);

}  // namespace qcs
