#include "mmfluct/quadrature.hpp"
#include "mmfluct/dd.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mmfluct {

namespace {

struct RefRule {
    std::vector<double> x, w; // on [-1,1]
};

// P_n(x) and P_n'(x) by the three-term recurrence, in dd.
void legendre_dd(int n, DD x, DD& p, DD& dp) {
    DD p0(1.0), p1 = x;
    for (int j = 2; j <= n; ++j) {
        DD p2 = (x * p1 * static_cast<double>(2 * j - 1) - p0 * static_cast<double>(j - 1))
                / static_cast<double>(j);
        p0 = p1;
        p1 = p2;
    }
    p = (n == 0) ? p0 : p1;
    // (x^2-1) P' = n (x P - P_{n-1})
    DD den = x * x - 1.0;
    dp = static_cast<double>(n) * (x * p1 - p0) / den;
}

RefRule reference_rule(int n) {
    RefRule r;
    r.x.resize(n);
    r.w.resize(n);
    int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        DD z(std::cos(M_PI * (i - 0.25) / (n + 0.5)));
        DD p, dp;
        for (int it = 0; it < 64; ++it) {
            legendre_dd(n, z, p, dp);
            DD dz = p / dp;
            z = z - dz;
            if (std::fabs(dz.hi) < 1e-31) break;
        }
        legendre_dd(n, z, p, dp);
        DD w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i - 1] = -z.to_double();
        r.x[n - i] = z.to_double();
        r.w[i - 1] = w.to_double();
        r.w[n - i] = r.w[i - 1];
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

const RefRule& cached_reference(int n) {
    static std::map<int, RefRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, reference_rule(n)).first;
    return it->second;
}

} // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    if (!(a < b)) throw std::domain_error("gauss_legendre: need a < b");
    const RefRule& ref = cached_reference(order);
    QuadratureRule q;
    q.order = order;
    q.nodes.resize(order);
    q.weights.resize(order);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
        q.nodes[i] = mid + half * ref.x[i];
        q.weights[i] = half * ref.w[i];
    }
    return q;
}

QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int order) {
    if (breaks.size() < 2) throw std::domain_error("composite rule needs >= 2 breakpoints");
    QuadratureRule q;
    q.order = order;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1]))
            throw std::domain_error("composite rule: breakpoints not increasing");
        QuadratureRule p = gauss_legendre(order, breaks[i], breaks[i + 1]);
        q.nodes.insert(q.nodes.end(), p.nodes.begin(), p.nodes.end());
        q.weights.insert(q.weights.end(), p.weights.begin(), p.weights.end());
    }
    return q;
}

std::vector<double> uniform_breaks(double a, double b, int panels) {
    std::vector<double> v(panels + 1);
    for (int i = 0; i <= panels; ++i) v[i] = a + (b - a) * i / panels;
    return v;
}

std::vector<double> graded_breaks(double a, double b, double point, double scale,
                                  double ratio) {
    std::vector<double> v;
    v.push_back(a);
    auto push_side = [&](double from, double to) {
        // geometric ladder from `scale` near `point` outward to |to-from|
        double len = std::fabs(to - from);
        if (len <= scale) return;
        std::vector<double> offs;
        for (double d = scale; d < len; d *= ratio) offs.push_back(d);
        if (to > from) { // ascending away from point
            for (auto it = offs.begin(); it != offs.end(); ++it) v.push_back(from + *it);
        } else {
            for (auto it = offs.rbegin(); it != offs.rend(); ++it) v.push_back(from - *it);
        }
    };
    if (point > a && point < b) {
        push_side(point, a); // descending offsets, inserted in increasing order
        v.push_back(point);
        push_side(point, b);
    } else if (point == a || point == b) {
        push_side(point, point == a ? b : a);
    }
    v.push_back(b);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double x, double y) { return std::fabs(x - y) < 1e-300; }),
            v.end());
    return v;
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, lm, flm);
    double right = simpson(f, m, fm, b, fb, rm, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(f, a, fa, b, fb, m, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

} // namespace mmfluct
