#include "mmfluct/orthopoly.hpp"
#include "mmfluct/dd.hpp"
#include "mmfluct/elliptic.hpp"
#include "mmfluct/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmfluct {

namespace {

double poly_eval(const Poly& p, double x) { return p(x); }

// largest |x| with n V(x)/2 - (L+1) log|x| = 92 on the given side (sign +-1)
double window_edge(const Potential& V, int n, int L, double sign) {
    auto f = [&](double x) {
        return 0.5 * n * V(sign * x) - (L + 1) * std::log(std::fmax(x, 1.0)) - 92.0;
    };
    double x = 1.0;
    while (f(x) < 0.0 && x < 1e6) x *= 1.25;
    if (x >= 1e6) throw std::runtime_error("stieltjes_recurrence: window search failed (potential too flat)");
    double lo = x / 1.25, hi = x;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
    }
    return sign * hi;
}

struct StieltjesResult {
    std::vector<double> r, s;
    double mu0 = 0.0;
    double loss_digits = 0.0;
};

StieltjesResult stieltjes_pass(const Potential& V, int n, int L, const QuadratureRule& rule) {
    const std::size_t M = rule.size();
    std::vector<DD> w(M);
    const Poly& Vp = V.as_poly();
    for (std::size_t i = 0; i < M; ++i) {
        // n V(x_i) in dd, then exp in dd: the weight's relative accuracy sets
        // the attainable accuracy of every r_l
        DD x(rule.nodes[i]);
        DD acc(0.0);
        for (std::size_t c = Vp.c.size(); c-- > 0;) acc = acc * x + DD(Vp.c[c]);
        w[i] = DD(rule.weights[i]) * dd_exp(-(acc * static_cast<double>(n)));
    }
    auto dot = [&](const std::vector<DD>& u, const std::vector<DD>& v) {
        DD s(0.0);
        for (std::size_t i = 0; i < M; ++i) s += w[i] * u[i] * v[i];
        return s;
    };

    StieltjesResult out;
    out.r.resize(L);
    out.s.resize(L + 1);

    std::vector<DD> p_prev(M, DD(0.0)), p_cur(M), q(M);
    DD mu0(0.0);
    for (std::size_t i = 0; i < M; ++i) mu0 += w[i];
    out.mu0 = mu0.to_double();
    DD inv_sqrt_mu0 = 1.0 / dd_sqrt(mu0);
    for (std::size_t i = 0; i < M; ++i) p_cur[i] = inv_sqrt_mu0;

    double max_drift = 0.0;
    DD r_prev(0.0);
    for (int l = 0; l <= L; ++l) {
        DD sl(0.0);
        for (std::size_t i = 0; i < M; ++i) sl += w[i] * DD(rule.nodes[i]) * p_cur[i] * p_cur[i];
        out.s[l] = sl.to_double();
        if (l == L) break;
        for (std::size_t i = 0; i < M; ++i)
            q[i] = (DD(rule.nodes[i]) - sl) * p_cur[i] - r_prev * p_prev[i];
        DD rl2 = dot(q, q);
        if (!(rl2.hi > 0.0))
            throw std::runtime_error("stieltjes_recurrence: precision exhausted at degree " +
                                     std::to_string(l));
        DD rl = dd_sqrt(rl2);
        out.r[l] = rl.to_double();
        for (std::size_t i = 0; i < M; ++i) {
            DD t = q[i] / rl;
            p_prev[i] = p_cur[i];
            p_cur[i] = t;
        }
        // residual orthogonality against the previous vector tracks the
        // cancellation actually suffered
        DD drift = dot(p_cur, p_prev);
        max_drift = std::fmax(max_drift, std::fabs(drift.to_double()));
        r_prev = rl;
    }
    out.loss_digits = std::fmax(0.0, std::log10(std::fmax(max_drift, 1e-300) / 2.5e-32));
    return out;
}

} // namespace

RecurrenceTable stieltjes_recurrence(const Potential& V, int n, int L) {
    if (n < 1) throw std::domain_error("stieltjes_recurrence: n >= 1 required");
    if (L > static_cast<int>(1.5 * n) + 20)
        throw std::domain_error("stieltjes_recurrence: L exceeds 1.5 n + 20");
    if (L < 1) throw std::domain_error("stieltjes_recurrence: L >= 1 required");

    double hi = window_edge(V, n, L, +1.0);
    double lo = window_edge(V, n, L, -1.0);

    RecurrenceTable table;
    table.n = n;
    table.L = L;
    table.window_lo = lo;
    table.window_hi = hi;

    int panels = 24;
    const int order = 80;
    StieltjesResult prev;
    bool have_prev = false;
    for (int pass = 0; pass < 5; ++pass, panels *= 2) {
        QuadratureRule rule = composite_gauss_legendre(uniform_breaks(lo, hi, panels), order);
        StieltjesResult cur = stieltjes_pass(V, n, L, rule);
        if (cur.loss_digits > 25.0)
            throw std::runtime_error("stieltjes_recurrence: precision loss " +
                                     std::to_string(cur.loss_digits) + " digits");
        if (have_prev) {
            double dmax = 0.0;
            for (int l = 0; l < L; ++l) dmax = std::fmax(dmax, std::fabs(cur.r[l] - prev.r[l]));
            for (int l = 0; l <= L; ++l) dmax = std::fmax(dmax, std::fabs(cur.s[l] - prev.s[l]));
            if (dmax <= 1e-12) {
                table.r = std::move(cur.r);
                table.s = std::move(cur.s);
                table.mu0 = cur.mu0;
                table.precision_loss_estimate = cur.loss_digits;
                table.master = std::move(rule);
                return table;
            }
        }
        prev = std::move(cur);
        have_prev = true;
        if (pass == 4) {
            // accept the last refinement
            QuadratureRule rule2 = composite_gauss_legendre(uniform_breaks(lo, hi, panels), order);
            table.r = std::move(prev.r);
            table.s = std::move(prev.s);
            table.mu0 = prev.mu0;
            table.precision_loss_estimate = prev.loss_digits;
            table.master = std::move(rule2);
            return table;
        }
    }
    throw std::runtime_error("stieltjes_recurrence: truncation error did not stabilize");
}

double WaveFunctionGrid::quad(const std::vector<double>& values) const {
    if (weights.empty()) throw std::runtime_error("WaveFunctionGrid: no quadrature weights attached");
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
    return s;
}

WaveFunctionGrid evaluate_psi(const std::shared_ptr<const RecurrenceTable>& table,
                              const Potential& V, const std::vector<double>& grid,
                              int up_to_degree) {
    const RecurrenceTable& T = *table;
    int Lr = up_to_degree < 0 ? T.L : up_to_degree;
    if (Lr > T.L) throw std::domain_error("evaluate_psi: table does not cover requested degree");
    for (double x : grid)
        if (x < T.window_lo - 1e-9 || x > T.window_hi + 1e-9)
            throw std::range_error("evaluate_psi: grid point outside the quadrature window");

    WaveFunctionGrid wf;
    wf.table = table;
    wf.potential = std::make_shared<Potential>(V);
    wf.n = T.n;
    wf.L = Lr;
    wf.nodes = grid;
    wf.psi.assign(static_cast<std::size_t>(Lr) + 1, std::vector<double>(grid.size()));

    const double log_norm = 0.5 * std::log(T.mu0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = grid[i];
        double p0 = std::exp(-0.5 * T.n * V(x) - log_norm);
        double pm = 0.0, pc = p0;
        wf.psi[0][i] = pc;
        for (int l = 0; l < Lr; ++l) {
            double pn = ((x - T.s[static_cast<std::size_t>(l)]) * pc -
                         (l > 0 ? T.r[static_cast<std::size_t>(l - 1)] : 0.0) * pm) /
                        T.r[static_cast<std::size_t>(l)];
            if (std::fabs(pn) > 1e250)
                throw std::range_error("evaluate_psi: recurrence overflow outside the window");
            pm = pc;
            pc = pn;
            wf.psi[static_cast<std::size_t>(l) + 1][i] = pc;
        }
    }
    return wf;
}

WaveFunctionGrid evaluate_psi_master(const std::shared_ptr<const RecurrenceTable>& table,
                                     const Potential& V, int up_to_degree) {
    WaveFunctionGrid wf = evaluate_psi(table, V, table->master.nodes, up_to_degree);
    wf.weights = table->master.weights;
    return wf;
}

CDKernel::CDKernel(const WaveFunctionGrid& wf) {
    if (wf.L < wf.n) throw std::runtime_error("cd_kernel: wavefunction grid lacks degree n");
    if (wf.n < 1) throw std::runtime_error("cd_kernel: n >= 1 required");
    table_ = wf.table;
    potential_ = wf.potential;
    n_ = wf.n;
    r_top_ = table_->r[static_cast<std::size_t>(n_ - 1)];
    nodes_ = wf.nodes;
    weights_ = wf.weights;
    psi_nm1_ = wf.psi[static_cast<std::size_t>(n_ - 1)];
    psi_n_ = wf.psi[static_cast<std::size_t>(n_)];
    dpsi_nm1_.resize(nodes_.size());
    dpsi_n_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        double a, b, da, db;
        columns(nodes_[i], a, b, da, db);
        dpsi_nm1_[i] = da;
        dpsi_n_[i] = db;
    }
}

void CDKernel::columns(double x, double& pnm1, double& pn, double& dpnm1, double& dpn) const {
    const RecurrenceTable& T = *table_;
    const Potential& V = *potential_;
    double p0 = std::exp(-0.5 * T.n * V(x) - 0.5 * std::log(T.mu0));
    double dp0 = -0.5 * T.n * V.derivative(x) * p0;
    double pm = 0.0, pc = p0, dm = 0.0, dc = dp0;
    pnm1 = (n_ == 1) ? 0.0 : pc; // overwritten below for n>1 paths
    for (int l = 0; l < n_; ++l) {
        double rl = T.r[static_cast<std::size_t>(l)];
        double sl = T.s[static_cast<std::size_t>(l)];
        double rm = l > 0 ? T.r[static_cast<std::size_t>(l - 1)] : 0.0;
        double pnew = ((x - sl) * pc - rm * pm) / rl;
        double dnew = ((x - sl) * dc + pc - rm * dm) / rl;
        pm = pc; pc = pnew;
        dm = dc; dc = dnew;
    }
    pnm1 = pm;
    pn = pc;
    dpnm1 = dm;
    dpn = dc;
}

double CDKernel::at(std::size_t i, std::size_t j) const {
    if (i == j) return diag(i);
    double num = psi_n_[i] * psi_nm1_[j] - psi_nm1_[i] * psi_n_[j];
    return r_top_ * num / (nodes_[i] - nodes_[j]);
}

double CDKernel::diag(std::size_t i) const {
    return r_top_ * (dpsi_n_[i] * psi_nm1_[i] - dpsi_nm1_[i] * psi_n_[i]);
}

double CDKernel::eval(double x, double y) const {
    if (std::fabs(x - y) < 1e-8 * (1.0 + std::fabs(x))) {
        double mid = 0.5 * (x + y);
        return eval_diag(mid);
    }
    double ax, bx, dax, dbx, ay, by, day, dby;
    columns(x, ax, bx, dax, dbx);
    columns(y, ay, by, day, dby);
    return r_top_ * (bx * ay - ax * by) / (x - y);
}

double CDKernel::eval_diag(double x) const {
    double a, b, da, db;
    columns(x, a, b, da, db);
    return r_top_ * (db * a - da * b);
}

void CDKernel::wave_pair(double x, double& psi_nm1, double& psi_n) const {
    double da, db;
    columns(x, psi_nm1, psi_n, da, db);
}

double CDKernel::window_lo() const { return table_->window_lo; }
double CDKernel::window_hi() const { return table_->window_hi; }

CDKernel cd_kernel(const WaveFunctionGrid& wf) { return CDKernel(wf); }

std::vector<double> gram_matrix(const WaveFunctionGrid& wf,
                                const std::function<double(double)>& phi) {
    if (wf.weights.empty())
        throw std::runtime_error("gram_matrix: wavefunction grid has no quadrature weights");
    const int n = wf.n;
    if (wf.L < n - 1) throw std::runtime_error("gram_matrix: grid lacks degrees up to n-1");
    const std::size_t G = wf.nodes.size();
    std::vector<double> ew(G);
    for (std::size_t i = 0; i < G; ++i) {
        double p = phi(wf.nodes[i]);
        if (p < -700.0) throw std::runtime_error("gram_matrix: e^{-phi} diverges on the window");
        ew[i] = wf.weights[i] * std::exp(-p);
    }
    std::vector<double> Gm(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        const auto& pj = wf.psi[static_cast<std::size_t>(j)];
        for (int k = j; k < n; ++k) {
            const auto& pk = wf.psi[static_cast<std::size_t>(k)];
            double s = 0.0;
            for (std::size_t i = 0; i < G; ++i) s += ew[i] * pj[i] * pk[i];
            Gm[static_cast<std::size_t>(j) * n + k] = s;
            Gm[static_cast<std::size_t>(k) * n + j] = s;
        }
    }
    return Gm;
}

std::vector<ProfileRow> recurrence_limit_profile(const Potential& V,
                                                 const std::vector<int>& n_list,
                                                 int k_range) {
    std::vector<ProfileRow> rows;
    bool two_band = false;
    double a = 0.0, b = 0.0, limit_r = 0.0;
    if (V.kind() == PotentialKind::Gaussian) {
        limit_r = std::sqrt(V.amplitude());
    } else {
        EquilibriumMeasure m = vbp_measure(V.vbp_v(), V.amplitude());
        if (m.support.q() == 1) {
            limit_r = 0.25 * m.support.bands[0].width();
        } else if (m.support.q() == 2 && m.support.symmetric(1e-9)) {
            two_band = true;
            a = m.support.bands[1].lo;
            b = m.support.bands[1].hi;
        } else {
            throw std::domain_error("recurrence_limit_profile: unsupported support layout");
        }
    }
    for (int n : n_list) {
        int L = n + k_range + 1;
        RecurrenceTable t = stieltjes_recurrence(V, n, L);
        ProfileRow row;
        row.n = n;
        for (int k = -k_range; k <= k_range; ++k) {
            int idx = n + k - 1;
            if (idx < 0 || idx >= L) continue;
            double r = t.r[static_cast<std::size_t>(idx)];
            double ref;
            if (two_band) {
                int parity = ((n + k) % 2 + 2) % 2;
                ref = (parity == 0) ? 0.5 * (b - a) : 0.5 * (b + a);
            } else {
                ref = limit_r;
            }
            row.max_dev_pair = std::fmax(row.max_dev_pair, std::fabs(r - ref));
            row.max_dev_profile = row.max_dev_pair; // hull points coincide with the profile
        }
        if (two_band) {
            for (int k = -k_range; k + 1 <= k_range; ++k) {
                int i0 = n + k - 1, i1 = n + k;
                if (i0 < 0 || i1 >= L) continue;
                double d0 = t.r[static_cast<std::size_t>(i1)] - t.r[static_cast<std::size_t>(i0)];
                int parity = ((n + k) % 2 + 2) % 2;
                // r at even index is the small one, so the difference rises
                // leaving an even slot and falls leaving an odd slot
                bool expect_up = (parity == 0);
                if ((d0 > 0.0) != expect_up) row.alternation_ok = false;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace mmfluct
