#include "qcs/qubit/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qcs/fft.hpp"
#include "qcs/qubit/prng.hpp"

namespace qcs {

std::string to_string(ScanAxis axis) {
    switch (axis) {
        case ScanAxis::amplitude: return "amplitude";
        case ScanAxis::duration: return "duration";
        case ScanAxis::frequency: return "frequency";
    }
    return "?";
}

std::optional<ScanAxis> scan_axis_from_string(const std::string& name) {
    if (name == "amplitude") return ScanAxis::amplitude;
    if (name == "duration") return ScanAxis::duration;
    if (name == "frequency") return ScanAxis::frequency;
    return std::nullopt;
}

namespace {

DriveParams drive_at(ScanAxis axis, const DriveTemplate& tpl, double x) {
    DriveParams params;
    params.rabi_rate = tpl.coupling * tpl.amplitude;
    params.duration_s = tpl.duration_s;
    params.detuning = tpl.detuning;
    params.phase_rad = tpl.phase_rad;
    switch (axis) {
        case ScanAxis::amplitude: params.rabi_rate = tpl.coupling * x; break;
        case ScanAxis::duration: params.duration_s = x; break;
        case ScanAxis::frequency: params.detuning = x; break;
    }
    return params;
}

Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

RabiScanResult run_rabi_scan(ScanAxis axis, const Eigen::ArrayXd& xs, const DriveTemplate& drive,
                             std::uint64_t shots, std::uint64_t seed, double depolarizing,
                             std::uint32_t workers) {
    if (xs.size() < 8) throw Error("scan needs at least 8 points");
    if (shots < 100) throw Error("scan needs at least 100 shots per point");
    if (workers < 1) throw Error("workers must be >= 1");
    if (xs.minCoeff() == xs.maxCoeff()) {
        throw Error("degenerate scan: all points identical");
    }

    RabiScanResult result;
    result.axis = axis;
    result.shots = shots;
    result.seed = seed;
    result.points.resize(static_cast<std::size_t>(xs.size()));

    const auto run_point = [&](std::size_t i) {
        const double x = xs[static_cast<Eigen::Index>(i)];
        const QubitState final_state =
            evolve(QubitState::ground(), drive_at(axis, drive, x));
        const std::uint64_t ones =
            measure(final_state, shots, mix_seed(seed, i), depolarizing);
        result.points[i] = {x, ones, shots,
                            static_cast<double>(ones) / static_cast<double>(shots)};
    };

    const std::size_t n = result.points.size();
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) run_point(i);
    } else {
        // Static partition: point i belongs to worker i % workers. Points own
        // their seeds, so the schedule cannot change any outcome.
        std::vector<std::thread> pool;
        const std::uint32_t active = std::min<std::uint32_t>(workers, static_cast<std::uint32_t>(n));
        pool.reserve(active);
        for (std::uint32_t w = 0; w < active; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += active) run_point(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    Eigen::ArrayXd ps(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
        ps[i] = result.points[static_cast<std::size_t>(i)].p_estimate;
    }
    try {
        result.fit = fit_oscillation(xs, ps);
        if (axis != ScanAxis::frequency) {
            result.pi_parameter = 1.0 / (2.0 * result.fit->frequency);
        }
    } catch (const FitError& e) {
        result.fit_error = e.what();
    }
    return result;
}

OscillationFit fit_oscillation(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ps) {
    const Eigen::Index n = xs.size();
    if (n < 8) throw Error("fit needs at least 8 points");
    if (ps.size() != n) throw Error("x and P lengths differ");

    const double dx = xs[1] - xs[0];
    if (!(std::abs(dx) > 0.0)) throw FitError("degenerate scan: zero spacing");
    for (Eigen::Index i = 1; i < n; ++i) {
        if (std::abs((xs[i] - xs[i - 1]) - dx) > 1e-9 * std::abs(dx)) {
            throw Error("fit needs uniformly spaced points");
        }
    }

    const Eigen::ArrayXd d = ps - ps.mean();
    if ((d == 0.0).all()) throw FitError("no oscillation: constant data");

    // Hann window against leakage from the conjugate image, then 8x zero
    // padding so the quadratic peak interpolation works on a fine grid.
    const Eigen::Index padded = next_pow2(8 * n);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(padded);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w =
            0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n - 1));
        x[i] = d[i] * w;
    }
    const Eigen::VectorXcd spectrum = fft(x);

    const Eigen::Index half = padded / 2;
    Eigen::ArrayXd power(half);
    for (Eigen::Index m = 1; m <= half; ++m) power[m - 1] = std::norm(spectrum[m]);

    Eigen::Index peak_offset = 0;
    const double peak = power.maxCoeff(&peak_offset);
    const Eigen::Index peak_bin = peak_offset + 1;

    Eigen::ArrayXd sorted = power;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    const double median = sorted[sorted.size() / 2];

    if (peak <= 0.0 || peak < 3.0 * median) {
        throw FitError("no oscillation: spectrum peak below 3x median power");
    }

    // Three-point parabolic refinement on the magnitude.
    double delta = 0.0;
    if (peak_bin > 1 && peak_bin < half) {
        const double a = std::abs(spectrum[peak_bin - 1]);
        const double b = std::abs(spectrum[peak_bin]);
        const double c = std::abs(spectrum[peak_bin + 1]);
        const double denom = a - 2.0 * b + c;
        if (denom != 0.0) delta = 0.5 * (a - c) / denom;
    }

    OscillationFit fit;
    fit.frequency = (static_cast<double>(peak_bin) + delta) /
                    (static_cast<double>(padded) * std::abs(dx));
    fit.uncertainty = 1.0 / (static_cast<double>(padded) * std::abs(dx));
    fit.peak_power = peak;
    fit.median_power = median;
    return fit;
}

CalibrationTable calibrate_pi_pulse(const RabiScanResult& scan, double duration_s,
                                    std::uint64_t timestamp) {
    if (scan.axis != ScanAxis::amplitude) {
        throw Error("pi-pulse calibration needs an amplitude scan");
    }
    if (!scan.fit) throw FitError("cannot calibrate: " + scan.fit_error);
    if (!(duration_s > 0.0)) throw Error("pulse duration must be positive");

    const double cycles_per_amp = scan.fit->frequency;
    const double kappa = 2.0 * M_PI * cycles_per_amp / duration_s;
    const double pi_amplitude = M_PI / (kappa * duration_s);

    CalibrationTable table;
    table.coupling = kappa;
    table.timestamp = timestamp;
    table.entries[GateName::x] = {pi_amplitude, duration_s, 0.0};
    table.entries[GateName::h] = {pi_amplitude, duration_s / 2.0, M_PI / 2.0};
    return table;
}

}  // namespace qcs
