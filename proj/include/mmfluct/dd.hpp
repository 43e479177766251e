#pragma once
// Double-double scalar: an unevaluated sum hi+lo of two doubles giving
// ~31 significant decimal digits.  Error-free transforms follow Dekker and
// Knuth; see also Joldes et al., ACM TOMS 44 (2018).

#include <cmath>
#include <cstdint>
#include <limits>

namespace mmfluct {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double x) : hi(x), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi; }
    double to_double() const { return hi + lo; }
};

namespace detail {

// a+b with exact roundoff, no magnitude assumption (Knuth two-sum)
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// a+b assuming |a| >= |b| (Dekker fast two-sum)
inline DD fast_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

// a*b with exact roundoff via fused multiply-add
inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline DD dd_normalize(double hi, double lo) { return detail::fast_two_sum(hi, lo); }

inline DD operator+(DD a, DD b) {
    DD s = detail::two_sum(a.hi, b.hi);
    DD t = detail::two_sum(a.lo, b.lo);
    double c = s.lo + t.hi;
    DD v = detail::fast_two_sum(s.hi, c);
    double w = t.lo + v.lo;
    return detail::fast_two_sum(v.hi, w);
}

inline DD operator+(DD a, double b) {
    DD s = detail::two_sum(a.hi, b);
    return detail::fast_two_sum(s.hi, s.lo + a.lo);
}
inline DD operator+(double a, DD b) { return b + a; }

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }
inline DD operator-(DD a, double b) { return a + (-b); }
inline DD operator-(double a, DD b) { return (-b) + a; }

inline DD operator*(DD a, DD b) {
    DD p = detail::two_prod(a.hi, b.hi);
    double t = a.hi * b.lo + a.lo * b.hi + p.lo;
    return detail::fast_two_sum(p.hi, t);
}
inline DD operator*(DD a, double b) {
    DD p = detail::two_prod(a.hi, b);
    return detail::fast_two_sum(p.hi, a.lo * b + p.lo);
}
inline DD operator*(double a, DD b) { return b * a; }

inline DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    DD q = detail::fast_two_sum(q1, q2);
    return q + q3;
}
inline DD operator/(DD a, double b) { return a / DD(b); }
inline DD operator/(double a, DD b) { return DD(a) / b; }

inline DD& operator+=(DD& a, DD b) { a = a + b; return a; }
inline DD& operator-=(DD& a, DD b) { a = a - b; return a; }
inline DD& operator*=(DD& a, DD b) { a = a * b; return a; }
inline DD& operator/=(DD& a, DD b) { a = a / b; return a; }

inline bool operator<(DD a, DD b)  { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b)  { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline DD dd_sqrt(DD a) {
    if (a.hi == 0.0) return DD(0.0);
    double y = std::sqrt(a.hi);
    // one Newton step in dd: y' = y + (a - y^2)/(2y)
    DD r = a - detail::two_prod(y, y);
    return DD(y) + r / (2.0 * y);
}

// exp with argument reduction x = k ln2 + r, |r| <= ln2/2, Taylor in dd
inline DD dd_exp(DD x) {
    static const DD LN2{6.93147180559945286e-01, 2.31904681384629956e-17};
    if (x.hi > 709.0)  return DD(std::numeric_limits<double>::infinity());
    if (x.hi < -745.0) return DD(0.0);
    double k = std::nearbyint(x.hi / LN2.hi);
    DD r = x - LN2 * k;
    DD term(1.0), sum(1.0);
    for (int i = 1; i <= 22; ++i) {
        term = term * r / static_cast<double>(i);
        sum += term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
    }
    int ik = static_cast<int>(k);
    return {std::ldexp(sum.hi, ik), std::ldexp(sum.lo, ik)};
}

// log via one dd Newton correction of the double-precision seed
inline DD dd_log(DD x) {
    double y = std::log(x.hi);
    DD ey = dd_exp(DD(-y));
    return DD(y) + x * ey - 1.0;
}

} // namespace mmfluct
