#include "qcs/compare.hpp"

#include <cmath>

#include "qcs/errors.hpp"

namespace qcs {

ComparisonReport compare_traces(const Eigen::ArrayXd& expected, const Eigen::ArrayXd& actual,
                                double tolerance) {
    if (expected.size() != actual.size()) {
        throw Error("trace length mismatch: expected " + std::to_string(expected.size()) +
                    " samples, actual " + std::to_string(actual.size()));
    }
    if (expected.size() == 0) throw Error("trace length mismatch: empty traces");
    if (!(tolerance >= 0.0)) throw Error("tolerance must be non-negative");

    ComparisonReport report;
    report.tolerance = tolerance;
    report.errors = (expected - actual).abs();

    Eigen::Index worst = 0;
    report.max_abs_error = report.errors.maxCoeff(&worst);
    report.worst_index = static_cast<std::size_t>(worst);
    report.rms_error = std::sqrt(report.errors.square().mean());
    report.pass = report.max_abs_error <= tolerance;
    return report;
}

}  // namespace qcs
