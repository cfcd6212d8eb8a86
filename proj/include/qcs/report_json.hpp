#pragma once

#include <string>

#include <json.hpp>

#include "qcs/compare.hpp"
#include "qcs/latency.hpp"
#include "qcs/qubit/rabi.hpp"
#include "qcs/spectrum.hpp"

namespace qcs {

nlohmann::json to_json(const ComparisonReport& report, bool include_errors = true);
nlohmann::json to_json(const SpectralReport& report);
nlohmann::json to_json(const LatencyReport& report);
nlohmann::json to_json(const RabiScanResult& result);

/// CSV export of a power spectrum: `bin,freq_hz,power_db`.
std::string spectrum_to_csv(const Eigen::ArrayXd& power_db, double sample_rate_hz,
                            std::size_t fft_size);

/// CSV export of a scan: `x,p_estimate,shots`.
std::string scan_to_csv(const RabiScanResult& result);

}  // namespace qcs
