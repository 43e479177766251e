#include "mmfluct/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmfluct {

double Poly::operator()(double x) const {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

Poly Poly::derivative() const {
    Poly d;
    if (c.size() <= 1) { d.c = {0.0}; return d; }
    d.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

void Poly::trim() {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    if (c.empty()) c = {0.0};
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

Poly poly_scale(const Poly& a, double s) {
    Poly r = a;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

Poly poly_shift_const(const Poly& a, double s) {
    Poly r = a;
    if (r.c.empty()) r.c = {0.0};
    r.c[0] += s;
    return r;
}

namespace {

// polynomial remainder a mod b (leading-coefficient-normalized)
Poly poly_rem(Poly a, const Poly& b) {
    a.trim();
    while (a.degree() >= b.degree() && !(a.degree() == 0 && a.c[0] == 0.0)) {
        double f = a.c.back() / b.c.back();
        int shift = a.degree() - b.degree();
        for (int i = 0; i <= b.degree(); ++i) a.c[static_cast<std::size_t>(i + shift)] -= f * b.c[static_cast<std::size_t>(i)];
        a.c.pop_back();
        a.trim();
        if (a.degree() == 0) break;
    }
    return a;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> s;
    s.push_back(p);
    s.push_back(p.derivative());
    while (s.back().degree() > 0) {
        Poly r = poly_rem(s[s.size() - 2], s.back());
        r = poly_scale(r, -1.0);
        // drop numerically-dead remainders
        double mx = 0.0;
        for (double v : r.c) mx = std::fmax(mx, std::fabs(v));
        if (mx < 1e-300) break;
        s.push_back(r);
        if (s.back().degree() == 0) break;
    }
    return s;
}

int sign_changes(const std::vector<Poly>& chain, double x) {
    int changes = 0, prev = 0;
    for (const Poly& q : chain) {
        double v = q(x);
        int sg = (v > 0.0) - (v < 0.0);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

} // namespace

int sturm_count(const Poly& p, double a, double b) {
    auto chain = sturm_chain(p);
    return sign_changes(chain, a) - sign_changes(chain, b);
}

std::vector<double> real_roots(const Poly& p, double tol) {
    Poly q = p;
    q.trim();
    if (q.degree() == 0) {
        if (q.c[0] == 0.0) throw std::domain_error("real_roots: zero polynomial");
        return {};
    }
    // Cauchy bound
    double lead = std::fabs(q.c.back());
    double bound = 0.0;
    for (std::size_t i = 0; i + 1 < q.c.size(); ++i) bound = std::fmax(bound, std::fabs(q.c[i]) / lead);
    bound += 1.0;

    auto chain = sturm_chain(q);
    std::vector<double> roots;
    struct Seg { double a, b; int n; };
    std::vector<Seg> stack{{-bound, bound, sign_changes(chain, -bound) - sign_changes(chain, bound)}};
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1 && (s.b - s.a) < 1e-3 * (1.0 + std::fabs(s.a))) {
            // refine by bisection then Newton polish
            double lo = s.a, hi = s.b;
            double flo = q(lo);
            for (int it = 0; it < 200 && (hi - lo) > tol * (1.0 + std::fabs(lo)); ++it) {
                double mid = 0.5 * (lo + hi), fm = q(mid);
                if ((flo <= 0.0) == (fm <= 0.0)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            double x = 0.5 * (lo + hi);
            Poly dq = q.derivative();
            for (int it = 0; it < 8; ++it) {
                double d = dq(x);
                if (d == 0.0) break;
                double step = q(x) / d;
                if (!std::isfinite(step)) break;
                double xn = x - step;
                if (xn < s.a - 1e-9 || xn > s.b + 1e-9) break;
                x = xn;
            }
            roots.push_back(x);
            continue;
        }
        double mid = 0.5 * (s.a + s.b);
        int left = sign_changes(chain, s.a) - sign_changes(chain, mid);
        stack.push_back({s.a, mid, left});
        stack.push_back({mid, s.b, s.n - left});
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace mmfluct
