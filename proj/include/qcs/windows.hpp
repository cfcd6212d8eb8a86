#pragma once

#include <Eigen/Core>

namespace qcs {

enum class WindowKind { rectangular, blackman };

/// Blackman window, w[k] = 0.42 - 0.5 cos(2 pi k/(n-1)) + 0.08 cos(4 pi k/(n-1)),
/// clamped to [0, 1] (the endpoint evaluates to -1.4e-17 in doubles). n >= 2.
Eigen::ArrayXd blackman_window(Eigen::Index n);

Eigen::ArrayXd make_window(WindowKind kind, Eigen::Index n);

}  // namespace qcs
