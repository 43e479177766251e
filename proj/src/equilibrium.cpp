#include "mmfluct/equilibrium.hpp"
#include "mmfluct/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmfluct {

SupportBands::SupportBands(std::vector<Band> b) : bands(std::move(b)) {
    if (bands.empty()) throw std::domain_error("SupportBands: need q >= 1");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        if (!(bands[i].lo < bands[i].hi) || !std::isfinite(bands[i].lo) || !std::isfinite(bands[i].hi))
            throw std::domain_error("SupportBands: endpoints must be finite and ordered");
        if (i > 0 && !(bands[i - 1].hi < bands[i].lo))
            throw std::domain_error("SupportBands: bands must be disjoint and increasing");
    }
}

bool SupportBands::contains(double x) const { return band_of(x) >= 0; }

int SupportBands::band_of(double x) const {
    for (std::size_t i = 0; i < bands.size(); ++i)
        if (bands[i].contains(x)) return static_cast<int>(i);
    return -1;
}

bool SupportBands::symmetric(double tol) const {
    int n = q();
    for (int i = 0; i < n; ++i) {
        const Band& left = bands[static_cast<std::size_t>(i)];
        const Band& right = bands[static_cast<std::size_t>(n - 1 - i)];
        if (std::fabs(left.lo + right.hi) > tol || std::fabs(left.hi + right.lo) > tol)
            return false;
    }
    return true;
}

double band_integrate(const std::function<double(double)>& f, const Band& band,
                      int panels, int order) {
    // lambda = mid - half cos(theta); d lambda = half sin(theta) d theta
    double mid = 0.5 * (band.lo + band.hi), half = 0.5 * band.width();
    QuadratureRule rule = composite_gauss_legendre(uniform_breaks(0.0, M_PI, panels), order);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double th = rule.nodes[i];
        double x = mid - half * std::cos(th);
        s += rule.weights[i] * half * std::sin(th) * f(x);
    }
    return s;
}

double band_integrate_partial(const std::function<double(double)>& f, const Band& band,
                              double from, double to, int panels, int order) {
    from = std::fmax(from, band.lo);
    to = std::fmin(to, band.hi);
    if (!(from < to)) return 0.0;
    double mid = 0.5 * (band.lo + band.hi), half = 0.5 * band.width();
    auto theta_of = [&](double x) {
        double c = std::fmax(-1.0, std::fmin(1.0, (mid - x) / half));
        return std::acos(c);
    };
    double t1 = theta_of(from), t2 = theta_of(to);
    QuadratureRule rule = composite_gauss_legendre(uniform_breaks(t1, t2, panels), order);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double th = rule.nodes[i];
        double x = mid - half * std::cos(th);
        s += rule.weights[i] * half * std::sin(th) * f(x);
    }
    return s;
}

double EquilibriumMeasure::total_mass() const {
    if (tag == MeasureTag::Numeric) {
        double s = 0.0;
        for (double m : masses) s += m;
        return s;
    }
    double s = 0.0;
    for (const Band& b : support.bands) s += band_integrate(density, b);
    return s;
}

double RobinMeasure::total_mass() const {
    double s = 0.0;
    for (const Band& b : support.bands) s += band_integrate(density, b);
    return s;
}

double RobinMeasure::counting(double lambda) const {
    double s = 0.0;
    for (const Band& b : support.bands) {
        if (lambda <= b.lo) s += band_integrate(density, b);
        else if (lambda < b.hi) s += band_integrate_partial(density, b, lambda, b.hi);
    }
    return s;
}

EquilibriumMeasure semicircle_measure(double g) {
    if (!(g > 0.0)) throw std::domain_error("semicircle_measure: g must be positive");
    double edge = 2.0 * std::sqrt(g);
    EquilibriumMeasure m;
    m.support = SupportBands({{-edge, edge}});
    m.density = [g, edge](double x) {
        if (std::fabs(x) >= edge) return 0.0;
        return std::sqrt(4.0 * g - x * x) / (2.0 * M_PI * g);
    };
    m.tag = MeasureTag::Semicircle;
    return m;
}

EquilibriumMeasure vbp_measure(const Poly& v, double g) {
    Potential pot = Potential::vbp(v.c, g); // validates the zero structure
    int q = v.degree();
    double s = 2.0 * std::sqrt(g);
    auto rp = real_roots(poly_shift_const(v, -s)); // v = +2 sqrt g
    auto rm = real_roots(poly_shift_const(v, s));  // v = -2 sqrt g
    std::vector<double> edges;
    edges.insert(edges.end(), rp.begin(), rp.end());
    edges.insert(edges.end(), rm.begin(), rm.end());
    std::sort(edges.begin(), edges.end());
    // consecutive edge pairs where v^2 <= 4g in between
    std::vector<Band> bands;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double mid = 0.5 * (edges[i] + edges[i + 1]);
        double vv = v(mid);
        if (vv * vv <= 4.0 * g) bands.push_back({edges[i], edges[i + 1]});
    }
    if (static_cast<int>(bands.size()) != q)
        throw std::domain_error("vbp_measure: support does not split into q bands");
    EquilibriumMeasure m;
    m.support = SupportBands(bands);
    Poly dv = v.derivative();
    m.density = [v, dv, g, q](double x) {
        double vv = v(x);
        double rad = 4.0 * g - vv * vv;
        if (rad <= 0.0) return 0.0;
        return std::fabs(dv(x)) * std::sqrt(rad) / (2.0 * M_PI * g * q);
    };
    for (int l = 1; l < q; ++l) m.charges.push_back(static_cast<double>(q - l) / q);
    m.tag = (q == 2 && pot.is_even()) ? MeasureTag::QuarticSym : MeasureTag::Vbp;
    return m;
}

EquilibriumMeasure quartic_two_well_measure(double m2, double g) {
    if (!(g > 0.0)) throw std::domain_error("quartic_two_well_measure: g must be positive");
    if (!(m2 > 2.0 * std::sqrt(g)))
        throw std::domain_error("quartic_two_well_measure: merged support, need m2 > 2 sqrt(g)");
    double a = std::sqrt(m2 - 2.0 * std::sqrt(g));
    double b = std::sqrt(m2 + 2.0 * std::sqrt(g));
    EquilibriumMeasure m;
    m.support = SupportBands({{-b, -a}, {a, b}});
    m.density = [a, b, g](double x) {
        double r = (b * b - x * x) * (x * x - a * a);
        if (r <= 0.0) return 0.0;
        return std::fabs(x) * std::sqrt(r) / (2.0 * M_PI * g);
    };
    m.charges = {0.5};
    m.tag = MeasureTag::QuarticSym;
    return m;
}

namespace {

// sign of sqrt(R_q(x + i0)) / i on band j (0-based from the left):
// (-1)^{q-1-j}; only products of two of these matter.
double band_branch_sign(int q, int j) { return ((q - 1 - j) % 2 == 0) ? 1.0 : -1.0; }

double abs_Rq(const SupportBands& s, double x) {
    double r = 1.0;
    for (const Band& b : s.bands) r *= std::fabs((x - b.lo) * (x - b.hi));
    return r;
}

} // namespace

EquilibriumMeasure dos_from_support(const Potential& V, const SupportBands& support) {
    const int q = support.q();
    const Poly dV = V.derivative_poly();
    // P(lambda) = (1/2 pi^2) int_sigma (V'(mu)-V'(lambda))/(mu-lambda)
    //             * eps(mu) dmu / sqrt|R_q(mu)|   (real form of the branch integral)
    auto P_times_eps = [support, dV, q](double lam) {
        double total = 0.0;
        for (int j = 0; j < q; ++j) {
            const Band& b = support.bands[static_cast<std::size_t>(j)];
            double sgn = band_branch_sign(q, j);
            total += sgn * band_integrate(
                [&](double mu) {
                    double dd = (std::fabs(mu - lam) > 1e-12)
                                    ? (dV(mu) - dV(lam)) / (mu - lam)
                                    : dV.derivative()(lam);
                    return dd / std::sqrt(abs_Rq(support, mu));
                },
                b, 12, 40);
        }
        return total / (2.0 * M_PI * M_PI);
    };
    EquilibriumMeasure m;
    m.support = support;
    m.density = [support, P_times_eps, q](double x) {
        int j = support.band_of(x);
        if (j < 0) return 0.0;
        double val = band_branch_sign(q, j) * P_times_eps(x) * std::sqrt(abs_Rq(support, x));
        return val;
    };
    m.tag = MeasureTag::Numeric;
    // negativity check on interior probes
    for (const Band& b : support.bands) {
        for (int i = 1; i <= 15; ++i) {
            double x = b.lo + b.width() * i / 16.0;
            if (m.density(x) < -1e-9)
                throw std::runtime_error("dos_from_support: inconsistent support, negative density");
        }
    }
    // charges from the counting function at the gap edges
    for (int l = 1; l < q; ++l)
        m.charges.push_back(0.0); // filled below once density is final
    for (int l = 1; l < q; ++l) {
        double s = 0.0;
        for (int j = l; j < q; ++j) s += band_integrate(m.density, support.bands[static_cast<std::size_t>(j)]);
        m.charges[static_cast<std::size_t>(l - 1)] = s;
    }
    return m;
}

double counting_function(const EquilibriumMeasure& m, double lambda) {
    if (m.tag == MeasureTag::Numeric && !m.grid.empty()) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.grid.size(); ++i) {
            double clo = m.grid[i] - 0.5 * m.cell, chi = m.grid[i] + 0.5 * m.cell;
            if (lambda <= clo) s += m.masses[i];
            else if (lambda < chi) s += m.masses[i] * (chi - lambda) / m.cell;
        }
        return s;
    }
    double s = 0.0;
    for (const Band& b : m.support.bands) {
        if (lambda <= b.lo) s += band_integrate(m.density, b);
        else if (lambda < b.hi) s += band_integrate_partial(m.density, b, lambda, b.hi);
    }
    return s;
}

RobinMeasure robin_measure_two_sym(double a, double b) {
    if (!(a > 0.0) || !(a < b)) throw std::domain_error("robin_measure_two_sym: need 0 < a < b");
    RobinMeasure nu;
    nu.support = SupportBands({{-b, -a}, {a, b}});
    nu.density = [a, b](double x) {
        double r = std::fabs((b * b - x * x) * (x * x - a * a));
        if (r == 0.0) return 0.0;
        return std::fabs(x) / (M_PI * std::sqrt(r));
    };
    nu.frequencies = {0.5};
    return nu;
}

NuConsistencyReport nu_as_g_derivative(const Potential& V, double step) {
    if (V.kind() != PotentialKind::Vbp)
        throw std::domain_error("nu_as_g_derivative: need a vbp / quartic-sym potential");
    double g = V.amplitude();
    if (!(step > 0.0) || step < 1e-12 * g)
        throw std::domain_error("nu_as_g_derivative: step size underflow");
    auto measure_at = [&](double gg) { return vbp_measure(V.vbp_v(), gg); };
    EquilibriumMeasure base = measure_at(g);
    if (base.support.q() != 2 || !base.support.symmetric(1e-9))
        throw std::domain_error("nu_as_g_derivative: probe comparison needs a symmetric two-band support");
    double a = base.support.bands[1].lo, b = base.support.bands[1].hi;
    RobinMeasure nu = robin_measure_two_sym(a, b);

    EquilibriumMeasure up = measure_at(g + step), dn = measure_at(g - step);
    NuConsistencyReport rep;
    double lo = base.support.lo(), hi = base.support.hi();
    // probes: below, inside both bands, inside the gap, above
    std::vector<double> probes{lo - 0.5, lo - 0.01, hi + 0.01, hi + 0.5, 0.0, 0.3 * a, -0.3 * a};
    for (int i = 1; i <= 6; ++i) {
        double t = i / 7.0;
        probes.push_back(a + t * (b - a));
        probes.push_back(-a - t * (b - a));
    }
    for (double x : probes) {
        double lhs = ((g + step) * counting_function(up, x) - (g - step) * counting_function(dn, x)) / (2.0 * step);
        double rhs = nu.counting(x);
        rep.probes.push_back(x);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        rep.max_discrepancy = std::fmax(rep.max_discrepancy, std::fabs(lhs - rhs));
    }
    return rep;
}

double gap_period_two_sym(double a, double b) {
    return 2.0 / b * complete_K(a / b);
}

double beta_dot(const std::function<double(double)>& phi, const SupportBands& support) {
    if (support.q() != 2)
        throw std::domain_error("beta_dot: only two-band supports are supported");
    if (!support.symmetric(1e-9))
        throw std::domain_error("beta_dot: only the symmetric two-band case is supported");
    double a = support.bands[1].lo, b = support.bands[1].hi;
    double I = gap_period_two_sym(a, b);
    // odd part of phi against the branch-weighted density; the right-band
    // branch sign is +1, the left is -1, making the integrand even in mu
    auto f = [&](double mu) {
        double r = std::fabs((b * b - mu * mu) * (mu * mu - a * a));
        if (r == 0.0) return 0.0;
        return (phi(mu) - phi(-mu)) / std::sqrt(r);
    };
    double integral = 2.0 * band_integrate(f, support.bands[1], 8, 48); // both bands equal
    return -integral / (4.0 * M_PI * I);
}

} // namespace mmfluct
