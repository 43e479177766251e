#include "mmfluct/fluctuations.hpp"
#include "mmfluct/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mmfluct {

namespace counting_detail {
double interval_variance_exact(const CDKernel& kernel, double lo, double hi);
}

namespace {

// divided difference with the confluent branch near the diagonal
inline double divided_difference(const TestFunction& phi, double x, double y,
                                 double fx, double fy) {
    if (std::fabs(x - y) < 1e-8) return phi.derivative(0.5 * (x + y));
    return (fx - fy) / (x - y);
}

} // namespace

double variance_exact(const CDKernel& kernel, const TestFunction& phi) {
    if (phi.kind() == TestFunctionKind::Indicator) {
        double lo = phi.lower(), hi = phi.upper();
        if (lo < kernel.window_lo() || hi > kernel.window_hi())
            throw std::range_error("variance_exact: indicator endpoints outside the kernel grid");
        return counting_detail::interval_variance_exact(kernel, lo, hi);
    }
    if (!phi.has_derivative())
        throw std::domain_error("variance_exact: test function must be C1 or an indicator");

    const auto& x = kernel.nodes();
    const auto& w = kernel.weights();
    if (w.empty()) throw std::runtime_error("variance_exact: kernel lacks quadrature weights");
    const std::size_t G = x.size();
    std::vector<double> f(G), pn(G), pm(G);
    for (std::size_t i = 0; i < G; ++i) f[i] = phi(x[i]);

    // V(l1,l2) = [r (psi_n(l1) psi_{n-1}(l2) - psi_{n-1}(l1) psi_n(l2))]^2 / 2,
    // which vanishes on the diagonal; row-wise accumulation keeps the
    // roundoff growth at ~G eps
    double total = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < G; ++j) {
            if (i == j) continue;
            double K = kernel.at(i, j);
            double d = divided_difference(phi, x[i], x[j], f[i], f[j]);
            double dl = x[i] - x[j];
            row += w[j] * d * d * 0.5 * dl * dl * K * K;
        }
        total += w[i] * row;
    }
    return total;
}

double variance_limit_q1(const TestFunction& phi, double r) {
    if (!(r > 0.0)) throw std::domain_error("variance_limit_q1: r must be positive");
    if (!phi.has_derivative())
        throw std::domain_error("variance_limit_q1: C1 test function required");
    // substitution l = 2r cos(theta) absorbs the edge singularities
    QuadratureRule th = composite_gauss_legendre(uniform_breaks(0.0, M_PI, 12), 24);
    const std::size_t G = th.size();
    std::vector<double> lam(G), f(G);
    for (std::size_t i = 0; i < G; ++i) {
        lam[i] = 2.0 * r * std::cos(th.nodes[i]);
        f[i] = phi(lam[i]);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < G; ++j) {
            double d = divided_difference(phi, lam[i], lam[j], f[i], f[j]);
            row += th.weights[j] * d * d * (4.0 * r * r - lam[i] * lam[j]);
        }
        total += th.weights[i] * row;
    }
    return total / (4.0 * M_PI * M_PI);
}

double variance_limit_q2_sym(const TestFunction& phi, double a, double b, Parity parity) {
    if (!(0.0 < a && a < b)) throw std::domain_error("variance_limit_q2_sym: need 0 < a < b");
    if (!phi.has_derivative())
        throw std::domain_error("variance_limit_q2_sym: C1 test function required");
    const double sgn = (parity == Parity::Even) ? 1.0 : -1.0; // (-1)^{2x}, x in {0, 1/2}

    // on (a,b): lambda(tau) = sqrt(a^2 cos^2 + b^2 sin^2), d lambda / sqrt|R2| = d tau / lambda
    QuadratureRule q = composite_gauss_legendre(uniform_breaks(0.0, 0.5 * M_PI, 8), 24);
    const std::size_t G = q.size();
    std::vector<double> lam(G);
    for (std::size_t i = 0; i < G; ++i) {
        double c = std::cos(q.nodes[i]), s = std::sin(q.nodes[i]);
        lam[i] = std::sqrt(a * a * c * c + b * b * s * s);
    }
    double total = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            double sign1 = s1 ? -1.0 : 1.0, sign2 = s2 ? -1.0 : 1.0;
            double eps12 = sign1 * sign2; // branch signs enter via the product only
            for (std::size_t i = 0; i < G; ++i) {
                double l1 = sign1 * lam[i];
                double f1 = phi(l1);
                double row = 0.0;
                for (std::size_t j = 0; j < G; ++j) {
                    double l2 = sign2 * lam[j];
                    double d = divided_difference(phi, l1, l2, f1, phi(l2));
                    double ker = sgn * a * b * (l1 - l2) * (l1 - l2) -
                                 (a * a - l1 * l2) * (b * b - l1 * l2);
                    row += q.weights[j] * d * d * ker / lam[j];
                }
                total += q.weights[i] * eps12 * row / lam[i];
            }
        }
    return total / (4.0 * M_PI * M_PI);
}

double clt_defect(double log_laplace, double variance_half) {
    return log_laplace - variance_half;
}

} // namespace mmfluct
