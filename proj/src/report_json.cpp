#include "qcs/report_json.hpp"

#include <cstdio>

namespace qcs {
namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& report, bool include_errors) {
    nlohmann::json j{
        {"max_abs_error", report.max_abs_error},
        {"rms_error", report.rms_error},
        {"worst_index", report.worst_index},
        {"tolerance", report.tolerance},
        {"pass", report.pass},
    };
    if (include_errors) {
        auto errors = nlohmann::json::array();
        for (Eigen::Index i = 0; i < report.errors.size(); ++i) errors.push_back(report.errors[i]);
        j["errors"] = std::move(errors);
    }
    return j;
}

nlohmann::json to_json(const SpectralReport& report) {
    return {
        {"fft_size", report.fft_size},
        {"window", report.window == WindowKind::blackman ? "blackman" : "rectangular"},
        {"dominant_bin", report.dominant_bin},
        {"expected_bin", report.expected_bin},
        {"dominant_power_db", report.dominant_power_db},
        {"worst_spur_bin", report.worst_spur_bin},
        {"worst_spur_dbc", report.worst_spur_dbc},
        {"spur_threshold_dbc", report.spur_threshold_dbc},
        {"exclusion_halfwidth", report.exclusion_halfwidth},
        {"pass", report.pass},
    };
}

nlohmann::json to_json(const LatencyReport& report) {
    auto pairs = nlohmann::json::array();
    for (const auto& [in_tick, out_tick] : report.pairs) {
        pairs.push_back({{"in_tick", in_tick}, {"out_tick", out_tick}});
    }
    auto violations = nlohmann::json::array();
    for (const auto& v : report.violations) {
        nlohmann::json item{{"index", v.index}};
        if (v.observed) {
            item["observed_latency"] = *v.observed;
        } else {
            item["observed_latency"] = nullptr;
        }
        violations.push_back(std::move(item));
    }
    return {
        {"expected_latency", report.expected_latency},
        {"pairs", std::move(pairs)},
        {"violations", std::move(violations)},
        {"pass", report.pass},
    };
}

nlohmann::json to_json(const RabiScanResult& result) {
    auto points = nlohmann::json::array();
    for (const auto& p : result.points) {
        points.push_back({{"x", p.x},
                          {"ones", p.ones},
                          {"shots", p.shots},
                          {"p_estimate", p.p_estimate}});
    }
    nlohmann::json j{
        {"axis", to_string(result.axis)},
        {"shots", result.shots},
        {"seed", result.seed},
        {"points", std::move(points)},
    };
    if (result.fit) {
        j["fit"] = {
            {"frequency", result.fit->frequency},
            {"uncertainty", result.fit->uncertainty},
            {"peak_power", result.fit->peak_power},
            {"median_power", result.fit->median_power},
        };
        if (result.pi_parameter) j["pi_parameter"] = *result.pi_parameter;
    } else {
        j["fit"] = nullptr;
        j["fit_error"] = result.fit_error;
    }
    return j;
}

std::string spectrum_to_csv(const Eigen::ArrayXd& power_db, double sample_rate_hz,
                            std::size_t fft_size) {
    std::string out = "bin,freq_hz,power_db\n";
    for (Eigen::Index m = 0; m < power_db.size(); ++m) {
        const double freq =
            sample_rate_hz * static_cast<double>(m) / static_cast<double>(fft_size);
        out += std::to_string(m) + "," + fmt(freq) + "," + fmt(power_db[m]) + "\n";
    }
    return out;
}

std::string scan_to_csv(const RabiScanResult& result) {
    std::string out = "x,p_estimate,shots\n";
    for (const auto& p : result.points) {
        out += fmt(p.x) + "," + fmt(p.p_estimate) + "," + std::to_string(p.shots) + "\n";
    }
    return out;
}

}  // namespace qcs
