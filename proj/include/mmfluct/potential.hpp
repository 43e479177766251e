#pragma once
#include "mmfluct/polynomial.hpp"

#include <string>
#include <vector>

namespace mmfluct {

enum class PotentialKind { Gaussian, Vbp, GenericPolynomial };

// External field of the matrix ensemble weight e^{-n V}.
//   Gaussian:          V = lambda^2 / (2g)
//   Vbp:               V = v(lambda)^2 / (2 g q), v monic of degree q with
//                      all zeros of v^2 - 4g real and simple
//   GenericPolynomial: V = p(lambda) / g, even leading degree, positive
//                      leading coefficient
class Potential {
public:
    static Potential gaussian(double g);
    static Potential vbp(std::vector<double> v_coeffs, double g);
    static Potential generic(std::vector<double> p_coeffs, double g);
    // convenience for the symmetric quartic v = lambda^2 - m2
    static Potential quartic_two_well(double m2, double g);

    PotentialKind kind() const { return kind_; }
    double amplitude() const { return g_; }
    int vbp_degree() const { return v_.degree(); }
    const Poly& vbp_v() const { return v_; }

    double operator()(double x) const { return V_(x); }
    double derivative(double x) const { return dV_(x); }
    const Poly& as_poly() const { return V_; }
    const Poly& derivative_poly() const { return dV_; }

    bool is_even() const;
    std::string describe() const;

private:
    Potential() = default;
    PotentialKind kind_ = PotentialKind::Gaussian;
    double g_ = 1.0;
    Poly v_;   // vbp only
    Poly V_;   // V itself as a polynomial
    Poly dV_;
};

} // namespace mmfluct
