#include "qcs/windows.hpp"

#include <cmath>

#include "qcs/errors.hpp"

namespace qcs {

Eigen::ArrayXd blackman_window(Eigen::Index n) {
    if (n < 2) throw Error("blackman window needs n >= 2");
    Eigen::ArrayXd w(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n - 1);
        const double v = 0.42 - 0.5 * std::cos(2.0 * M_PI * t) + 0.08 * std::cos(4.0 * M_PI * t);
        w[k] = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    }
    return w;
}

Eigen::ArrayXd make_window(WindowKind kind, Eigen::Index n) {
    if (kind == WindowKind::blackman) return blackman_window(n);
    return Eigen::ArrayXd::Ones(n);
}

}  // namespace qcs
