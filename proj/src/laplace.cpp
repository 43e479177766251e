#include "mmfluct/fluctuations.hpp"
#include "mmfluct/dd.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mmfluct {

namespace {

// log det of a symmetric positive definite matrix by Cholesky carried in
// double-double; n up to a few hundred
double dd_cholesky_logdet(const std::vector<double>& A, int n) {
    std::vector<DD> L(static_cast<std::size_t>(n) * n, DD(0.0));
    DD logdet(0.0);
    for (int j = 0; j < n; ++j) {
        DD d(A[static_cast<std::size_t>(j) * n + j]);
        for (int k = 0; k < j; ++k) d -= L[static_cast<std::size_t>(j) * n + k] * L[static_cast<std::size_t>(j) * n + k];
        if (!(d.hi > 0.0))
            throw std::runtime_error("laplace_exact: Gram matrix numerically singular at pivot " +
                                     std::to_string(j));
        DD ljj = dd_sqrt(d);
        L[static_cast<std::size_t>(j) * n + j] = ljj;
        logdet += dd_log(ljj);
        for (int i = j + 1; i < n; ++i) {
            DD s(A[static_cast<std::size_t>(i) * n + j]);
            for (int k = 0; k < j; ++k)
                s -= L[static_cast<std::size_t>(i) * n + k] * L[static_cast<std::size_t>(j) * n + k];
            L[static_cast<std::size_t>(i) * n + j] = s / ljj;
        }
    }
    return 2.0 * logdet.to_double();
}

} // namespace

double mean_linear_statistic(const WaveFunctionGrid& wf, const TestFunction& phi) {
    if (wf.weights.empty())
        throw std::runtime_error("mean_linear_statistic: grid lacks quadrature weights");
    const std::size_t G = wf.nodes.size();
    const int n = wf.n;
    double s = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        double kd = 0.0;
        for (int l = 0; l < n; ++l) {
            double v = wf.psi[static_cast<std::size_t>(l)][i];
            kd += v * v;
        }
        s += wf.weights[i] * phi(wf.nodes[i]) * kd;
    }
    return s;
}

double laplace_exact(const WaveFunctionGrid& wf, const TestFunction& phi) {
    const int n = wf.n;
    if (wf.L < n - 1) throw std::runtime_error("laplace_exact: grid lacks degrees up to n-1");
    std::vector<double> G = gram_matrix(wf, [&phi](double x) { return phi(x); });
    double logdet = dd_cholesky_logdet(G, n);
    return logdet + mean_linear_statistic(wf, phi);
}

} // namespace mmfluct
