#include "qcs/fft.hpp"

#include <cmath>

#include "qcs/errors.hpp"

namespace qcs {
namespace {

bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative radix-2 Cooley-Tukey, n a power of two. sign = -1 forward.
void radix2(Eigen::VectorXcd& a, int sign) {
    const Eigen::Index n = a.size();
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (Eigen::Index i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

Eigen::VectorXcd pow2_transform(Eigen::VectorXcd a, int sign) {
    radix2(a, sign);
    return a;
}

// Bluestein's algorithm: any-length DFT as a power-of-two convolution.
Eigen::VectorXcd bluestein(const Eigen::VectorXcd& x, int sign) {
    const Eigen::Index n = x.size();
    const Eigen::Index m = next_pow2(2 * n - 1);

    // Chirp with phase index k^2 mod 2n to keep the trig argument small.
    Eigen::VectorXcd chirp(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double ang =
            sign * M_PI * static_cast<double>((k * k) % (2 * n)) / static_cast<double>(n);
        chirp[k] = std::complex<double>(std::cos(ang), std::sin(ang));
    }

    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(m);
    for (Eigen::Index k = 0; k < n; ++k) a[k] = x[k] * chirp[k];

    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(m);
    b[0] = std::conj(chirp[0]);
    for (Eigen::Index k = 1; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        b[m - k] = std::conj(chirp[k]);
    }

    radix2(a, -1);
    radix2(b, -1);
    for (Eigen::Index k = 0; k < m; ++k) a[k] *= b[k];
    radix2(a, +1);
    a /= static_cast<double>(m);

    Eigen::VectorXcd out(n);
    for (Eigen::Index k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

Eigen::VectorXcd transform(const Eigen::VectorXcd& x, int sign) {
    if (x.size() == 0) throw Error("empty input to transform");
    if (x.size() == 1) return x;
    if (is_pow2(x.size())) return pow2_transform(x, sign);
    return bluestein(x, sign);
}

}  // namespace

Eigen::VectorXcd fft(const Eigen::VectorXcd& x) { return transform(x, -1); }

Eigen::VectorXcd ifft(const Eigen::VectorXcd& x) {
    Eigen::VectorXcd y = transform(x, +1);
    y /= static_cast<double>(x.size());
    return y;
}

}  // namespace qcs
