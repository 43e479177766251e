#include "mmfluct/fluctuations.hpp"
#include "mmfluct/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mmfluct {

namespace {

// panel edges on (0, len] resolving the corner at 0 (geometric ladder from
// `fine` up to `eps`) and the kernel oscillation (uniform width `wave` beyond)
std::vector<double> corner_breaks(double len, double fine, double eps, double wave) {
    std::vector<double> v{0.0};
    double d = fine;
    double stop = std::fmin(eps, len);
    while (d < stop) {
        v.push_back(d);
        d *= 1.7;
    }
    double start = v.back();
    if (start < len) {
        int panels = std::max(1, static_cast<int>(std::ceil((len - start) / wave)));
        for (int i = 1; i <= panels; ++i) v.push_back(start + (len - start) * i / panels);
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> wave_panel_breaks(double lo, double hi, double wave) {
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / wave)));
    return uniform_breaks(lo, hi, panels);
}

struct Axis {
    std::vector<double> x, w;   // lambda values and quadrature weights
    std::vector<double> pn, pm; // psi_n, psi_{n-1} at x
};

Axis axis_from_breaks(const CDKernel& K, const std::vector<double>& breaks, int order,
                      double offset, double sign) {
    QuadratureRule q = composite_gauss_legendre(breaks, order);
    Axis a;
    a.x.resize(q.size());
    a.w = q.weights;
    a.pn.resize(q.size());
    a.pm.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        a.x[i] = offset + sign * q.nodes[i];
        K.wave_pair(a.x[i], a.pm[i], a.pn[i]);
    }
    return a;
}

double oscillation_panel_width(const CDKernel& K, double probe) {
    double kd = std::fabs(K.eval_diag(probe));
    return 0.35 / std::fmax(kd, 1.0); // about a third of the local wavelength
}

// int int K^2 over axis1 x axis2 from cached wavefunction pairs
double kernel_square_tensor(const CDKernel& K, const Axis& A, const Axis& B) {
    const double r = K.r_top();
    double total = 0.0;
    for (std::size_t i = 0; i < A.x.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < B.x.size(); ++j) {
            double d = A.x[i] - B.x[j];
            double num = r * (A.pn[i] * B.pm[j] - A.pm[i] * B.pn[j]);
            double Kij = (std::fabs(d) > 1e-11) ? num / d : K.eval_diag(0.5 * (A.x[i] + B.x[j]));
            row += B.w[j] * Kij * Kij;
        }
        total += A.w[i] * row;
    }
    return total;
}

// one boundary of Delta: int_{y in (0,len)} int_{u in (0,umax)}
// K^2(c - s y, c + s u) dy du with c the boundary point, s = +-1
double boundary_outside_integral(const CDKernel& K, double c, double sgn, double len,
                                 double umax) {
    const int n = K.n();
    double wave = oscillation_panel_width(K, c - sgn * 1e-3 * len);
    double fine = 0.05 / n;
    const double eps = 0.1;
    const int order = 10;
    Axis ay = axis_from_breaks(K, corner_breaks(len, fine, eps, wave), order, c, -sgn);
    Axis au = axis_from_breaks(K, corner_breaks(umax, fine, eps, wave), order, c, +sgn);
    return kernel_square_tensor(K, ay, au);
}

double trace_over(const CDKernel& K, double lo, double hi) {
    double wave = oscillation_panel_width(K, 0.5 * (lo + hi));
    QuadratureRule q = composite_gauss_legendre(wave_panel_breaks(lo, hi, wave), 10);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * K.eval_diag(q.nodes[i]);
    return s;
}

} // namespace

namespace counting_detail {
double interval_variance_exact(const CDKernel& kernel, double lo, double hi) {
    if (!(lo < hi)) throw std::domain_error("counting variance: need lo < hi");
    double len = hi - lo;
    double right = boundary_outside_integral(kernel, hi, +1.0, len, kernel.window_hi() - hi);
    double left = boundary_outside_integral(kernel, lo, -1.0, len, lo - kernel.window_lo());
    return right + left;
}
} // namespace counting_detail

FluctuationReport gue_counting_variance(const CDKernel& kernel, double lo, double hi) {
    // bulk check: the diagonal of the kernel must be macroscopically large at
    // both endpoints, otherwise the edge regime is entered
    double scale = kernel.n() * 0.05;
    if (kernel.eval_diag(lo) < scale || kernel.eval_diag(hi) < scale)
        throw std::domain_error("gue_counting_variance: interval touches the spectral edge");
    FluctuationReport rep;
    rep.quantity = Quantity::Variance;
    rep.n = kernel.n();
    rep.finite_n_value = counting_detail::interval_variance_exact(kernel, lo, hi);
    rep.limit_value = std::log(static_cast<double>(kernel.n())) / (M_PI * M_PI);
    rep.discrepancy = std::fabs(rep.finite_n_value - rep.limit_value);
    rep.case_tag = "variance";
    return rep;
}

double covariance_case_integral(double lo1, double hi1, double lo2, double hi2, double g) {
    // smoothed-kernel double integral (1/(2 pi^2)) (4g - l m) / ((l-m)^2 sqrt sqrt);
    // both the 1/(l-m)^2 near-gap behavior and the inverse-sqrt bulk edges
    // need panel grading
    auto den = [&](double x) { return std::sqrt(std::fmax(4.0 * g - x * x, 0.0)); };
    auto breaks_for = [&](double lo, double hi, double towards) {
        double len = hi - lo;
        auto br = graded_breaks(lo, hi, towards, 1e-7 * len);
        auto brl = graded_breaks(lo, hi, lo, 1e-9 * len);
        auto brh = graded_breaks(lo, hi, hi, 1e-9 * len);
        br.insert(br.end(), brl.begin(), brl.end());
        br.insert(br.end(), brh.begin(), brh.end());
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end(),
                             [](double x, double y) { return std::fabs(x - y) < 1e-14; }),
                 br.end());
        return br;
    };
    QuadratureRule q1 = composite_gauss_legendre(breaks_for(lo1, hi1, (lo2 >= hi1) ? hi1 : lo1), 16);
    QuadratureRule q2 = composite_gauss_legendre(breaks_for(lo2, hi2, (lo2 >= hi1) ? lo2 : hi2), 16);
    double s = 0.0;
    for (std::size_t i = 0; i < q1.size(); ++i) {
        double l = q1.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < q2.size(); ++j) {
            double m = q2.nodes[j];
            double d = l - m;
            row += q2.weights[j] * (4.0 * g - l * m) / (d * d * den(l) * den(m));
        }
        s += q1.weights[i] * row;
    }
    return s / (2.0 * M_PI * M_PI);
}

namespace {

// embedded case: + (1/(2 pi^2)) int_{Delta1} int_{bulk \ Delta2} smoothed kernel
double embedded_case_integral(double lo1, double hi1, double lo2, double hi2, double g) {
    double edge = 2.0 * std::sqrt(g);
    double margin = 1e-9;
    double total = 0.0;
    if (lo2 > -edge + margin)
        total += covariance_case_integral(lo1, hi1, -edge + 1e-12, lo2, g);
    if (hi2 < edge - margin)
        total += covariance_case_integral(lo1, hi1, hi2, edge - 1e-12, g);
    return total;
}

// intersecting case: matched-cutoff difference of the two smoothed pieces
double intersect_case_integral(double a1, double a2, double b1, double b2, double g) {
    double edge = 2.0 * std::sqrt(g);
    auto piece = [&](double p, double q, double u, double v, double delta) {
        // int_{(p,q)} int_{(u,v)} smoothed kernel restricted to |l-m| > delta
        auto den = [&](double x) { return std::sqrt(std::fmax(4.0 * g - x * x, 1e-30)); };
        QuadratureRule ql = composite_gauss_legendre(graded_breaks(p, q, a2, 0.25 * delta), 14);
        double s = 0.0;
        for (std::size_t i = 0; i < ql.size(); ++i) {
            double l = ql.nodes[i];
            QuadratureRule qm = composite_gauss_legendre(graded_breaks(u, v, l, 0.25 * delta), 14);
            double row = 0.0;
            for (std::size_t j = 0; j < qm.size(); ++j) {
                double m = qm.nodes[j];
                double d = l - m;
                if (std::fabs(d) <= delta) continue;
                row += qm.weights[j] * (4.0 * g - l * m) / (d * d * den(l) * den(m));
            }
            s += ql.weights[i] * row;
        }
        return s / (2.0 * M_PI * M_PI);
    };
    auto val = [&](double delta) {
        double first = piece(a2, b1, -edge + 1e-12, a2, delta) +
                       piece(a2, b1, b2, edge - 1e-12, delta);
        double second = piece(a1, a2, a2, b2, delta);
        return first - second;
    };
    // the log(delta) parts cancel; extrapolate the O(delta) remainder
    double p1 = val(2e-3), p2 = val(1e-3);
    return 2.0 * p2 - p1;
}

} // namespace

FluctuationReport counting_covariance(const CDKernel& kernel, double lo1, double hi1,
                                      double lo2, double hi2, double g) {
    if (!(lo1 < hi1) || !(lo2 < hi2))
        throw std::domain_error("counting_covariance: invalid interval ordering");
    // canonical ordering: hi1 <= hi2
    if (hi1 > hi2) {
        std::swap(lo1, lo2);
        std::swap(hi1, hi2);
    }
    const int n = kernel.n();
    FluctuationReport rep;
    rep.quantity = Quantity::Covariance;
    rep.n = n;

    // exact value: trace over the intersection minus the rectangle integral
    double ilo = std::fmax(lo1, lo2), ihi = std::fmin(hi1, hi2);
    double wave = oscillation_panel_width(kernel, 0.5 * (lo1 + hi2));
    double fine = 0.05 / n;
    const double eps = 0.1;
    const int order = 10;

    auto axis_for = [&](double lo, double hi, std::vector<double> corner_pts) {
        // wavelength panels, refined geometrically toward shared corner points
        std::vector<double> br = wave_panel_breaks(lo, hi, wave);
        for (double c : corner_pts) {
            if (c <= lo + 1e-14 || c >= hi - 1e-14) {
                double anchor = (c <= lo + 1e-14) ? lo : hi;
                double d = fine;
                while (d < std::fmin(eps, hi - lo)) {
                    br.push_back(anchor + ((anchor == lo) ? d : -d));
                    d *= 1.7;
                }
            } else if (c > lo && c < hi) {
                auto g2 = graded_breaks(lo, hi, c, fine);
                br.insert(br.end(), g2.begin(), g2.end());
            }
        }
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end(),
                             [](double x, double y) { return std::fabs(x - y) < 1e-13; }),
                 br.end());
        return br;
    };

    // corners of Delta1 x Delta2 lying on the diagonal need grading
    std::vector<double> shared;
    for (double c1 : {lo1, hi1})
        for (double c2 : {lo2, hi2})
            if (std::fabs(c1 - c2) < 1e-12) shared.push_back(c1);

    Axis A = axis_from_breaks(kernel, axis_for(lo1, hi1, shared), order, 0.0, 1.0);
    Axis B = axis_from_breaks(kernel, axis_for(lo2, hi2, shared), order, 0.0, 1.0);
    double rect = kernel_square_tensor(kernel, A, B);
    double tr = (ilo < ihi) ? trace_over(kernel, ilo, ihi) : 0.0;
    rep.finite_n_value = tr - rect;

    // classification and predicted asymptote
    double logn = std::log(static_cast<double>(n));
    if (hi1 <= lo2 || hi2 <= lo1) {
        bool touching = std::fabs(hi1 - lo2) < 1e-12 || std::fabs(hi2 - lo1) < 1e-12;
        if (touching) {
            rep.case_tag = "touching-outside";
            rep.limit_value = -logn / (2.0 * M_PI * M_PI);
        } else {
            rep.case_tag = "disjoint";
            rep.limit_value = -covariance_case_integral(lo1, hi1, lo2, hi2, g);
        }
    } else if (std::fabs(lo1 - lo2) < 1e-12 || std::fabs(hi1 - hi2) < 1e-12) {
        rep.case_tag = "touching-inside";
        rep.limit_value = logn / (2.0 * M_PI * M_PI);
    } else if (lo2 < lo1 && hi1 < hi2) {
        rep.case_tag = "embedded";
        rep.limit_value = embedded_case_integral(lo1, hi1, lo2, hi2, g);
    } else {
        rep.case_tag = "intersecting";
        rep.limit_value = intersect_case_integral(lo1, lo2, hi1, hi2, g);
    }
    rep.discrepancy = std::fabs(rep.finite_n_value - rep.limit_value);
    return rep;
}

} // namespace mmfluct
