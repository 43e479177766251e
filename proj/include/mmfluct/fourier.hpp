#pragma once
#include <complex>
#include <vector>

namespace mmfluct {

// Fourier coefficients c_m, |m| <= M, of a 1-periodic function.
// For real input data c_{-m} = conj(c_m).
struct FourierSeries {
    int M = 0;
    std::vector<std::complex<double>> c; // index m+M, m in [-M, M]

    std::complex<double> coeff(int m) const {
        if (m < -M || m > M) return {0.0, 0.0};
        return c[static_cast<std::size_t>(m + M)];
    }
    // pointwise resynthesis sum_m c_m e^{2 pi i m x}
    std::complex<double> evaluate(double x) const;
};

// Discrete Fourier analysis of samples f(j/N), j=0..N-1.  N must be a power
// of two >= 64.  c_0 equals the grid average; coefficients are kept for
// |m| <= N/2 - 1.
FourierSeries fourier_analyze(const std::vector<double>& samples);

// In-place radix-2 decimation FFT (forward, e^{-2 pi i jk/N} convention).
void fft_pow2(std::vector<std::complex<double>>& a);

} // namespace mmfluct
