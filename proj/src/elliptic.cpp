#include "mmfluct/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace mmfluct {

double complete_K(double k) {
    if (!(k >= 0.0) || k >= 1.0) throw std::domain_error("complete_K: need 0 <= k < 1");
    double a = 1.0, b = std::sqrt(1.0 - k * k);
    while (std::fabs(a - b) > 1e-17 * a) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a);
}

double complete_E(double k) {
    if (!(k >= 0.0) || k > 1.0) throw std::domain_error("complete_E: need 0 <= k <= 1");
    if (k == 1.0) return 1.0;
    double a = 1.0, b = std::sqrt(1.0 - k * k), c = k;
    double sum = 0.5 * c * c;
    double pow2 = 1.0;
    while (std::fabs(c) > 1e-18 * a) {
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += 0.5 * pow2 * c * c;
    }
    double K = M_PI / (2.0 * a);
    return K * (1.0 - sum);
}

JacobiValues jacobi_elliptic(double u, double k) {
    if (!(k >= 0.0) || k >= 1.0) throw std::domain_error("jacobi_elliptic: need 0 <= k < 1");
    if (k < 1e-12) {
        // trigonometric degeneration with first-order correction
        double s = std::sin(u), c = std::cos(u);
        double m = k * k;
        return {s - 0.25 * m * (u - s * c) * c,
                c + 0.25 * m * (u - s * c) * s,
                1.0 - 0.5 * m * s * s};
    }
    // AGM chain (Abramowitz-Stegun 16.4)
    double a[64], c[64];
    double an = 1.0, bn = std::sqrt(1.0 - k * k), cn_ = k;
    int n = 0;
    a[0] = an; c[0] = cn_;
    while (std::fabs(cn_) > 1e-17 * an && n < 62) {
        double a1 = 0.5 * (an + bn);
        cn_ = 0.5 * (an - bn);
        bn = std::sqrt(an * bn);
        an = a1;
        ++n;
        a[n] = an; c[n] = cn_;
    }
    double phi = std::ldexp(1.0, n) * an * u;
    for (int i = n; i >= 1; --i)
        phi = 0.5 * (phi + std::asin(std::fmax(-1.0, std::fmin(1.0, c[i] / a[i] * std::sin(phi)))));
    double sn = std::sin(phi), cn = std::cos(phi);
    double dn = std::sqrt(1.0 - k * k * sn * sn);
    return {sn, cn, dn};
}

double jacobi_cn(double u, double k) { return jacobi_elliptic(u, k).cn; }
double jacobi_sn(double u, double k) { return jacobi_elliptic(u, k).sn; }
double jacobi_dn(double u, double k) { return jacobi_elliptic(u, k).dn; }

} // namespace mmfluct
