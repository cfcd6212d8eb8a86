#pragma once

#include <Eigen/Core>
#include <cstddef>

namespace qcs {

/// Sample-wise comparison verdict between an expected and an actual trace.
struct ComparisonReport {
    double max_abs_error = 0.0;
    double rms_error = 0.0;
    std::size_t worst_index = 0;
    double tolerance = 0.0;
    bool pass = false;
    Eigen::ArrayXd errors;  // per-sample |expected - actual|, for error bars
};

/// Pointwise |expected - actual| with max/rms statistics.
/// pass iff max_abs_error <= tolerance. Lengths must match and be nonzero.
ComparisonReport compare_traces(const Eigen::ArrayXd& expected, const Eigen::ArrayXd& actual,
                                double tolerance);

}  // namespace qcs
