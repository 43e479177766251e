#pragma once
#include "mmfluct/fourier.hpp"
#include "mmfluct/orthopoly.hpp"
#include "mmfluct/testfunction.hpp"

#include <optional>
#include <string>
#include <utility>

namespace mmfluct {

enum class Quantity { Variance, Covariance, LogLaplace };

struct FluctuationReport {
    Quantity quantity = Quantity::Variance;
    int n = 0;
    double finite_n_value = 0.0;
    double limit_value = 0.0;
    std::optional<std::pair<double, double>> oscillation_pair; // (even-n, odd-n)
    double discrepancy = 0.0;
    std::string case_tag;
};

// ---- exact finite-n statistics ----

// Var{N_n[phi]} from the kernel: double quadrature of the squared divided
// difference against the rank-one kernel square (C1 route), or the
// inside/outside kernel split for indicators.
double variance_exact(const CDKernel& kernel, const TestFunction& phi);

// log Z_n[phi] = log det Gram(e^{-phi}) + E{N_n[phi]}; the determinant is
// evaluated by pivoted Cholesky in double-double arithmetic.
double laplace_exact(const WaveFunctionGrid& wf, const TestFunction& phi);

// mean E{N_n[phi]} = int phi(x) K_n(x,x) dx on the master grid
double mean_linear_statistic(const WaveFunctionGrid& wf, const TestFunction& phi);

// finite - varhalf; -> 0 iff the Gaussian log-Laplace shape holds
double clt_defect(double log_laplace, double variance_half);

// ---- global-regime limits ----

// single band [-2r, 2r]: universal kernel (4r^2 - l1 l2) / (4 pi^2 sqrt sqrt)
double variance_limit_q1(const TestFunction& phi, double r);

enum class Parity { Even, Odd };

// symmetric two-band [-b,-a] u [a,b]; x = 0 for even n, 1/2 for odd n
double variance_limit_q2_sym(const TestFunction& phi, double a, double b, Parity parity);

// Limiting law data for the symmetric two-band model: the coefficient
// profile R^2 on the torus, its Fourier series, the rotation number omega of
// the charge under a linear field, and the log-Laplace exponent F.
struct LimitLawQ2 {
    double a = 0.0, b = 0.0;
    double omega = 0.0;     // |beta_1-dot| for phi(x) = x
    double modulus = 0.0;   // 2 sqrt(ab)/(a+b)
    FourierSeries series;   // Fourier coefficients of R^2 (1024-point grid)

    double R2(double x) const;        // elliptic profile, 1-periodic, even
    double A(double x) const;         // truncated series, |m| <= 64
    double A_prime(double x) const;
    double F(double t, double x) const;            // series form
    double F_quadrature(double t, double x) const; // int_0^t (t-s) R^2(x+s omega) ds
};

LimitLawQ2 limit_law_q2(double a, double b);

// ---- counting measures (indicator statistics) ----

// Var{N_n(Delta)} exactly, via the boundary split of the inside/outside
// double integral; limit field carries log(n)/pi^2.
FluctuationReport gue_counting_variance(const CDKernel& kernel, double lo, double hi);

// Cov{N_n(Delta1), N_n(Delta2)} with the interval-geometry case tag and the
// matching predicted asymptote.
FluctuationReport counting_covariance(const CDKernel& kernel, double lo1, double hi1,
                                      double lo2, double hi2, double g);

// smoothed-kernel covariance integral over Delta1 x Delta2 (the bounded-case
// prediction; negative of it for disjoint intervals is the covariance)
double covariance_case_integral(double lo1, double hi1, double lo2, double hi2, double g);

// ---- local and intermediate regimes ----

// int int (phi(t1)-phi(t2))^2 sin^2(pi rho0 (t1-t2)) / (2 pi^2 (t1-t2)^2)
double sine_kernel_variance(const TestFunction& phi, double rho0,
                            double* tail_bound = nullptr);

// Szego-form variance: both the direct double integral and
// int |k| |phihat(k)|^2 dk are computed; they must agree and the Fourier
// value is returned.
double intermediate_variance(const TestFunction& phi, double* direct_route = nullptr);

// sine_kernel_variance with the oscillating factor replaced by its mean 1/2
double intermediate_variance_kernel_average(const TestFunction& phi);

// 2 pi rho0 phihat(0) + log det(1 - S_phi), Nystrom discretization
double fredholm_sine_det(const TestFunction& phi, double rho0, int nystrom_order = 240);

// max |B - 1| over probes for the single-band plane-wave closed forms;
// dscale multiplies the amplitude factor (sensitivity experiments)
double b_identity_check_q1(double r, const std::vector<double>& probes,
                           double dscale = 1.0);

} // namespace mmfluct
