#pragma once

#include <Eigen/Core>
#include <complex>

namespace qcs {

/// Forward DFT, X[m] = sum_k x[k] e^{-2 pi i k m / N}, any N >= 1.
/// Radix-2 in-place for powers of two, Bluestein's chirp-z otherwise.
Eigen::VectorXcd fft(const Eigen::VectorXcd& x);

/// Inverse transform, x[k] = (1/N) sum_m X[m] e^{+2 pi i k m / N}.
Eigen::VectorXcd ifft(const Eigen::VectorXcd& x);

}  // namespace qcs
