#include "mmfluct/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mmfluct {

namespace {

// Euclidean projection onto the probability simplex (sort-based)
void project_simplex(std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> u(x);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    std::size_t rho = 0;
    double run = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        run += u[i];
        if (u[i] * static_cast<double>(i + 1) > run - 1.0) {
            rho = i;
            css = run;
        }
    }
    theta = (css - 1.0) / static_cast<double>(rho + 1);
    for (auto& v : x) v = std::fmax(v - theta, 0.0);
}

struct LogKernel {
    std::vector<double> a; // dense row-major G x G
    std::size_t n = 0;
    int threads = 1;

    // y = A x, rows split across threads (bit-deterministic per row)
    void matvec(const std::vector<double>& x, std::vector<double>& y) const {
        auto row_range = [&](std::size_t r0, std::size_t r1) {
            for (std::size_t i = r0; i < r1; ++i) {
                const double* row = a.data() + i * n;
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
                y[i] = s;
            }
        };
        if (threads <= 1) {
            row_range(0, n);
            return;
        }
        std::vector<std::thread> pool;
        std::size_t chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t r0 = std::min(n, static_cast<std::size_t>(t) * chunk);
            std::size_t r1 = std::min(n, r0 + chunk);
            if (r0 < r1) pool.emplace_back(row_range, r0, r1);
        }
        for (auto& th : pool) th.join();
    }
};

} // namespace

EquilibriumMeasure minimize_energy(const Potential& V, const MinimizeOptions& opt) {
    if (!(opt.lo < opt.hi)) throw std::domain_error("minimize_energy: need lo < hi");
    const std::size_t G = static_cast<std::size_t>(opt.grid_points);
    if (G < 16) throw std::domain_error("minimize_energy: grid too small");
    const double h = (opt.hi - opt.lo) / static_cast<double>(G);

    std::vector<double> t(G), v(G);
    for (std::size_t i = 0; i < G; ++i) {
        t[i] = opt.lo + h * (static_cast<double>(i) + 0.5);
        v[i] = V(t[i]);
    }

    LogKernel L;
    L.n = G;
    L.threads = opt.threads > 0 ? opt.threads
                                : std::max(1u, std::thread::hardware_concurrency());
    L.a.resize(G * G);
    const double diag = std::log(h) - 1.5; // uniform-cell self energy
    for (std::size_t i = 0; i < G; ++i)
        for (std::size_t j = 0; j < G; ++j)
            L.a[i * G + j] = (i == j) ? diag : std::log(std::fabs(t[i] - t[j]));

    // E(p) = -p^T L p + v . p ; grad = -2 L p + v
    std::vector<double> p(G, 1.0 / static_cast<double>(G));
    std::vector<double> y = p, pn(G), Lp(G), grad(G);

    // Lipschitz constant of the gradient ~ 2 ||L||_2, power iteration
    std::vector<double> z(G, 1.0 / std::sqrt(static_cast<double>(G))), Az(G);
    double lam = 1.0;
    for (int it = 0; it < 25; ++it) {
        L.matvec(z, Az);
        double nrm = std::sqrt(std::inner_product(Az.begin(), Az.end(), Az.begin(), 0.0));
        if (nrm == 0.0) break;
        lam = nrm;
        for (std::size_t i = 0; i < G; ++i) z[i] = Az[i] / nrm;
    }
    const double eta = 1.0 / (2.0 * lam);

    double tk = 1.0;
    double residual = 1e300;
    bool converged = false;
    for (int it = 0; it < opt.max_iters; ++it) {
        L.matvec(y, Lp);
        for (std::size_t i = 0; i < G; ++i) grad[i] = -2.0 * Lp[i] + v[i];
        for (std::size_t i = 0; i < G; ++i) pn[i] = y[i] - eta * grad[i];
        project_simplex(pn);

        double r2 = 0.0;
        for (std::size_t i = 0; i < G; ++i) {
            double d = pn[i] - y[i];
            r2 += d * d;
        }
        residual = std::sqrt(r2) / eta;

        double tk1 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        double beta = (tk - 1.0) / tk1;
        // monotone restart: if momentum points uphill, reset
        double dot = 0.0;
        for (std::size_t i = 0; i < G; ++i) dot += (pn[i] - p[i]) * (y[i] - pn[i]);
        if (dot > 0.0) {
            tk1 = 1.0;
            beta = 0.0;
        }
        for (std::size_t i = 0; i < G; ++i) y[i] = pn[i] + beta * (pn[i] - p[i]);
        p.swap(pn);
        tk = tk1;
        if (residual < opt.tol) {
            converged = true;
            break;
        }
    }
    if (!converged && residual > 1e-5)
        throw std::runtime_error("minimize_energy: no convergence, projected-gradient residual " +
                                 std::to_string(residual));

    // band detection: maximal runs of weight above threshold, short gaps closed
    double pmax = *std::max_element(p.begin(), p.end());
    double thr = opt.band_threshold * pmax;
    std::vector<char> on(G);
    for (std::size_t i = 0; i < G; ++i) on[i] = p[i] > thr;
    for (std::size_t i = 1; i + 2 < G; ++i) { // close gaps of fewer than 3 cells
        if (on[i - 1] && !on[i]) {
            std::size_t j = i;
            while (j < G && !on[j]) ++j;
            if (j < G && j - i < 3)
                for (std::size_t k = i; k < j; ++k) on[k] = 1;
            i = j;
        }
    }
    std::vector<Band> bands;
    for (std::size_t i = 0; i < G;) {
        if (!on[i]) { ++i; continue; }
        std::size_t j = i;
        while (j < G && on[j]) ++j;
        bands.push_back({t[i] - 0.5 * h, t[j - 1] + 0.5 * h});
        i = j;
    }
    if (bands.empty()) throw std::runtime_error("minimize_energy: empty support detected");

    EquilibriumMeasure m;
    m.support = SupportBands(bands);
    m.tag = MeasureTag::Numeric;
    m.grid = t;
    m.masses = p;
    m.cell = h;
    auto grid_copy = t;
    auto mass_copy = p;
    m.density = [grid_copy, mass_copy, h, lo = opt.lo, G](double x) {
        double pos = (x - lo) / h - 0.5;
        if (pos <= 0.0) return mass_copy.front() / h;
        if (pos >= static_cast<double>(G - 1)) return mass_copy.back() / h;
        std::size_t i = static_cast<std::size_t>(pos);
        double f = pos - static_cast<double>(i);
        return ((1.0 - f) * mass_copy[i] + f * mass_copy[i + 1]) / h;
    };
    for (std::size_t l = 1; l < bands.size(); ++l)
        m.charges.push_back(counting_function(m, bands[l].lo - 0.25 * h));
    return m;
}

double euler_lagrange_residual(const Potential& V, const EquilibriumMeasure& m) {
    // log-potential U(x) = int log|x - mu| dN(mu)
    std::function<double(double)> U;
    if (m.tag == MeasureTag::Numeric && !m.grid.empty()) {
        // exact cell integrals of log against piecewise-constant masses
        const auto& g = m.grid;
        const auto& w = m.masses;
        double h = m.cell;
        U = [&g, &w, h](double x) {
            auto prim = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::fabs(u)) - u; };
            double s = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (w[i] == 0.0) continue;
                double a = g[i] - 0.5 * h - x, b = g[i] + 0.5 * h - x;
                s += w[i] / h * (prim(b) - prim(a));
            }
            return s;
        };
    } else {
        U = [&m](double x) {
            double s = 0.0;
            for (const Band& b : m.support.bands) {
                // graded panels toward the interior singularity; edges are
                // handled by the cosine substitution inside band_integrate
                if (x > b.lo && x < b.hi) {
                    double scale = 1e-10 * std::fmax(1.0, b.width());
                    auto breaks = graded_breaks(b.lo, b.hi, x, scale);
                    double acc = 0.0;
                    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
                        Band seg{breaks[i], breaks[i + 1]};
                        acc += band_integrate(
                            [&](double mu) {
                                double d = std::fabs(x - mu);
                                return d == 0.0 ? 0.0 : m.density(mu) * std::log(d);
                            },
                            seg, 1, 16);
                    }
                    s += acc;
                } else {
                    s += band_integrate(
                        [&](double mu) { return m.density(mu) * std::log(std::fabs(x - mu)); },
                        b, 10, 24);
                }
            }
            return s;
        };
    }
    auto veff = [&](double x) { return V(x) - 2.0 * U(x); };

    std::vector<double> on_vals;
    const int per_band = std::max(8, 512 / m.support.q());
    for (const Band& b : m.support.bands)
        for (int i = 0; i < per_band; ++i) {
            double x = b.lo + b.width() * (i + 0.5) / per_band;
            on_vals.push_back(veff(x));
        }
    std::vector<double> sorted = on_vals;
    std::sort(sorted.begin(), sorted.end());
    double F = sorted[sorted.size() / 2];

    double r_on = 0.0;
    for (double v : on_vals) r_on = std::fmax(r_on, std::fabs(v - F));

    // exterior window: the gaps plus one band-width beyond each end
    double pad = 0.5 * (m.support.hi() - m.support.lo());
    std::vector<double> ext;
    auto push_range = [&](double a, double b, int cnt) {
        for (int i = 0; i < cnt; ++i) ext.push_back(a + (b - a) * (i + 0.5) / cnt);
    };
    int q = m.support.q();
    int per_gap = std::max(8, 256 / (q + 1));
    push_range(m.support.lo() - pad, m.support.lo() - 1e-3, per_gap);
    for (int l = 0; l + 1 < q; ++l)
        push_range(m.support.bands[static_cast<std::size_t>(l)].hi + 1e-3,
                   m.support.bands[static_cast<std::size_t>(l) + 1].lo - 1e-3, per_gap);
    push_range(m.support.hi() + 1e-3, m.support.hi() + pad, per_gap);

    double r_off = 0.0;
    for (double x : ext) r_off = std::fmax(r_off, std::fmax(0.0, F - veff(x)));
    return r_on + r_off;
}

} // namespace mmfluct
