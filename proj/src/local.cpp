#include "mmfluct/fluctuations.hpp"
#include "mmfluct/equilibrium.hpp"
#include "mmfluct/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef MMFLUCT_HAVE_EIGEN
#include <Eigen/Dense>
#endif

namespace mmfluct {

namespace {

// window [-T, T] beyond which |phi| drops under `drop` times its peak
double decay_window(const TestFunction& phi, double drop) {
    double peak = 0.0;
    for (double x = -2.0; x <= 2.0; x += 0.05) peak = std::fmax(peak, std::fabs(phi(x)));
    if (peak == 0.0) return 1.0;
    double T = 1.0;
    while (T < 1e4) {
        double m = std::fmax(std::fabs(phi(T)), std::fabs(phi(-T)));
        for (double x = 0.8 * T; x <= T; x += 0.05 * T)
            m = std::fmax(m, std::fmax(std::fabs(phi(x)), std::fabs(phi(-x))));
        if (m < drop * peak) return T;
        T *= 1.4;
    }
    throw std::domain_error("local-regime variance: test function does not decay");
}

double local_variance_integral(const TestFunction& phi, double rho0, double T,
                               bool averaged) {
    // oscillation scale in t1 - t2 is 1/rho0, diagonal is removable
    int panels = std::max(24, static_cast<int>(std::ceil(4.0 * T * rho0)) * 4);
    QuadratureRule q = composite_gauss_legendre(uniform_breaks(-T, T, panels), 12);
    const std::size_t G = q.size();
    std::vector<double> f(G);
    for (std::size_t i = 0; i < G; ++i) f[i] = phi(q.nodes[i]);
    double s = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < G; ++j) {
            double d = q.nodes[i] - q.nodes[j];
            double ratio = (std::fabs(d) < 1e-7)
                               ? phi.derivative(0.5 * (q.nodes[i] + q.nodes[j]))
                               : (f[i] - f[j]) / d;
            double osc = averaged ? 0.5 : std::sin(M_PI * rho0 * d) * std::sin(M_PI * rho0 * d);
            row += q.weights[j] * ratio * ratio * osc;
        }
        s += q.weights[i] * row;
    }
    return s / (2.0 * M_PI * M_PI);
}

} // namespace

double sine_kernel_variance(const TestFunction& phi, double rho0, double* tail_bound) {
    if (!(rho0 > 0.0)) throw std::domain_error("sine_kernel_variance: rho0 must be positive");
    double T = decay_window(phi, 1e-9);
    double v1 = local_variance_integral(phi, rho0, T, false);
    if (tail_bound) {
        double v2 = local_variance_integral(phi, rho0, 1.5 * T, false);
        *tail_bound = std::fabs(v2 - v1);
        return v2;
    }
    return v1;
}

double intermediate_variance_kernel_average(const TestFunction& phi) {
    double T = decay_window(phi, 1e-9);
    return local_variance_integral(phi, 1.0, 1.5 * T, true);
}

double intermediate_variance(const TestFunction& phi, double* direct_route) {
    if (!phi.has_fourier())
        throw std::domain_error("intermediate_variance: Fourier transform required");
    // Fourier route: int |k| phihat(k) phihat(-k) dk
    double kmax = 1.0;
    while (kmax < 1e4 && std::abs(phi.fourier(kmax)) > 1e-14) kmax *= 1.4;
    if (kmax >= 1e4)
        throw std::domain_error("intermediate_variance: heavy-tailed Fourier transform");
    QuadratureRule qk = composite_gauss_legendre(uniform_breaks(0.0, kmax, 32), 16);
    double fourier_val = 0.0;
    for (std::size_t i = 0; i < qk.size(); ++i) {
        double k = qk.nodes[i];
        fourier_val += qk.weights[i] * 2.0 * k * std::norm(phi.fourier(k));
    }
    if (direct_route) {
        // direct route with analytic window tails:
        //   (1/(4 pi^2)) int int (phi1-phi2)^2 / (t1-t2)^2
        double T = decay_window(phi, 1e-11);
        int panels = 64;
        QuadratureRule q = composite_gauss_legendre(uniform_breaks(-T, T, panels), 14);
        const std::size_t G = q.size();
        std::vector<double> f(G);
        for (std::size_t i = 0; i < G; ++i) f[i] = phi(q.nodes[i]);
        double s = 0.0, tails = 0.0;
        for (std::size_t i = 0; i < G; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < G; ++j) {
                double d = q.nodes[i] - q.nodes[j];
                double ratio = (std::fabs(d) < 1e-7)
                                   ? phi.derivative(0.5 * (q.nodes[i] + q.nodes[j]))
                                   : (f[i] - f[j]) / d;
                row += q.weights[j] * ratio * ratio;
            }
            s += q.weights[i] * row;
            // t2 beyond the window, where phi(t2) vanishes; counted twice by symmetry
            tails += 2.0 * q.weights[i] * f[i] * f[i] *
                     (1.0 / (T - q.nodes[i]) + 1.0 / (T + q.nodes[i]));
        }
        *direct_route = (s + tails) / (4.0 * M_PI * M_PI);
    }
    return fourier_val;
}

double fredholm_sine_det(const TestFunction& phi, double rho0, int nystrom_order) {
    if (!(rho0 > 0.0)) throw std::domain_error("fredholm_sine_det: rho0 must be positive");
    if (nystrom_order > 2000) throw std::domain_error("fredholm_sine_det: Nystrom order too large");
    if (!phi.has_fourier()) throw std::domain_error("fredholm_sine_det: Fourier transform required");
    // operator support: where |1 - e^{-phi}| exceeds 1e-10
    double T = 1.0;
    while (T < 1e4) {
        double m = 0.0;
        for (double x = 0.9 * T; x <= T; x += 0.02 * T)
            m = std::fmax(m, std::fmax(std::fabs(1.0 - std::exp(-phi(x))),
                                       std::fabs(1.0 - std::exp(-phi(-x)))));
        if (m < 1e-10) break;
        T *= 1.3;
    }
    if (T >= 1e4) throw std::domain_error("fredholm_sine_det: test function not integrable");

    QuadratureRule q = gauss_legendre(nystrom_order, -T, T);
    const int N = nystrom_order;
    auto sinc = [rho0](double d) {
        double z = M_PI * rho0 * d;
        return std::fabs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    };
#ifdef MMFLUCT_HAVE_EIGEN
    Eigen::MatrixXd M(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double mult = (1.0 - std::exp(-phi(q.nodes[static_cast<std::size_t>(j)]))) *
                          q.weights[static_cast<std::size_t>(j)];
            M(i, j) = (i == j ? 1.0 : 0.0) -
                      sinc(q.nodes[static_cast<std::size_t>(i)] - q.nodes[static_cast<std::size_t>(j)]) * mult;
        }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    double logdet = 0.0;
    double sign = 1.0;
    Eigen::MatrixXd U = lu.matrixLU();
    for (int i = 0; i < N; ++i) {
        double p = U(i, i);
        if (p < 0.0) sign = -sign;
        logdet += std::log(std::fabs(p));
    }
    sign *= lu.permutationP().determinant();
    if (sign <= 0.0) throw std::runtime_error("fredholm_sine_det: determinant not positive");
#else
    // fallback: dense LU without pivોting refinement
    std::vector<double> M(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double mult = (1.0 - std::exp(-phi(q.nodes[static_cast<std::size_t>(j)]))) *
                          q.weights[static_cast<std::size_t>(j)];
            M[static_cast<std::size_t>(i) * N + j] =
                (i == j ? 1.0 : 0.0) -
                sinc(q.nodes[static_cast<std::size_t>(i)] - q.nodes[static_cast<std::size_t>(j)]) * mult;
        }
    double logdet = 0.0;
    for (int k = 0; k < N; ++k) {
        int piv = k;
        for (int i = k + 1; i < N; ++i)
            if (std::fabs(M[static_cast<std::size_t>(i) * N + k]) >
                std::fabs(M[static_cast<std::size_t>(piv) * N + k]))
                piv = i;
        if (piv != k)
            for (int j = 0; j < N; ++j)
                std::swap(M[static_cast<std::size_t>(k) * N + j], M[static_cast<std::size_t>(piv) * N + j]);
        double p = M[static_cast<std::size_t>(k) * N + k];
        if (p == 0.0) throw std::runtime_error("fredholm_sine_det: singular Nystrom matrix");
        logdet += std::log(std::fabs(p));
        for (int i = k + 1; i < N; ++i) {
            double f = M[static_cast<std::size_t>(i) * N + k] / p;
            for (int j = k; j < N; ++j)
                M[static_cast<std::size_t>(i) * N + j] -= f * M[static_cast<std::size_t>(k) * N + j];
        }
    }
#endif
    return 2.0 * M_PI * rho0 * phi.fourier(0.0).real() + logdet;
}

double b_identity_check_q1(double r, const std::vector<double>& probes, double dscale) {
    if (!(r > 0.0)) throw std::domain_error("b_identity_check_q1: r must be positive");
    Band band{-2.0 * r, 2.0 * r};
    auto nu_density = [r](double x) {
        double rad = 4.0 * r * r - x * x;
        return rad <= 0.0 ? 0.0 : 1.0 / (M_PI * std::sqrt(rad));
    };
    double worst = 0.0;
    for (double x : probes) {
        if (!(x > band.lo && x < band.hi))
            throw std::domain_error("b_identity_check_q1: probe at or beyond the band edge");
        // amplitude factor is the arcsine density; phase increment is pi nu
        // with nu the integrated density above the probe
        double D = dscale * nu_density(x);
        double nu = band_integrate_partial(nu_density, band, x, band.hi, 12, 24);
        double B = 4.0 * M_PI * M_PI * r * r * D * D *
                   std::sin(M_PI * nu) * std::sin(M_PI * nu);
        worst = std::fmax(worst, std::fabs(B - 1.0));
    }
    return worst;
}

} // namespace mmfluct
