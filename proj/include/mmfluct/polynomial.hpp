#pragma once
#include <vector>

namespace mmfluct {

// Dense real polynomial, coefficients in ascending degree order.
struct Poly {
    std::vector<double> c; // c[0] + c[1] x + ...

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    double operator()(double x) const;
    Poly derivative() const;
    void trim();
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_shift_const(const Poly& a, double s); // a + s

// All real roots in increasing order, found by Sturm-sequence isolation and
// bisection/Newton refinement.  Throws if the polynomial is identically zero.
std::vector<double> real_roots(const Poly& p, double tol = 1e-13);

// Number of distinct real roots in (a, b] by Sturm's theorem.
int sturm_count(const Poly& p, double a, double b);

} // namespace mmfluct
