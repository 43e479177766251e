#include "mmfluct/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace mmfluct {

void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::domain_error("fft_pow2: size not a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * M_PI / static_cast<double>(len);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

FourierSeries fourier_analyze(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 64 || (n & (n - 1)) != 0)
        throw std::domain_error("fourier_analyze: need a power-of-two grid of size >= 64");
    std::vector<std::complex<double>> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = samples[j];
    fft_pow2(a);
    FourierSeries fs;
    fs.M = static_cast<int>(n / 2) - 1;
    fs.c.assign(2 * fs.M + 1, {0.0, 0.0});
    for (int m = -fs.M; m <= fs.M; ++m) {
        std::size_t idx = static_cast<std::size_t>((m + static_cast<int>(n)) % static_cast<int>(n));
        fs.c[static_cast<std::size_t>(m + fs.M)] = a[idx] / static_cast<double>(n);
    }
    return fs;
}

std::complex<double> FourierSeries::evaluate(double x) const {
    std::complex<double> s(0.0, 0.0);
    for (int m = -M; m <= M; ++m) {
        double ang = 2.0 * M_PI * m * x;
        s += coeff(m) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

} // namespace mmfluct
