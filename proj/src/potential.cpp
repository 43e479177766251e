#include "mmfluct/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace mmfluct {

Potential Potential::gaussian(double g) {
    if (!(g > 0.0)) throw std::domain_error("Potential::gaussian: g must be positive");
    Potential p;
    p.kind_ = PotentialKind::Gaussian;
    p.g_ = g;
    p.V_ = Poly({0.0, 0.0, 1.0 / (2.0 * g)});
    p.dV_ = p.V_.derivative();
    return p;
}

Potential Potential::vbp(std::vector<double> v_coeffs, double g) {
    if (!(g > 0.0)) throw std::domain_error("Potential::vbp: g must be positive");
    Poly v(std::move(v_coeffs));
    int q = v.degree();
    if (q < 1 || v.c.back() != 1.0)
        throw std::domain_error("Potential::vbp: v must be monic of degree >= 1");
    // all zeros of v^2 - 4g real and simple <=> v - 2 sqrt(g) and v + 2 sqrt(g)
    // each have q distinct real roots, with no root shared
    double s = 2.0 * std::sqrt(g);
    auto rp = real_roots(poly_shift_const(v, -s));
    auto rm = real_roots(poly_shift_const(v, s));
    if (static_cast<int>(rp.size()) != q || static_cast<int>(rm.size()) != q)
        throw std::domain_error("Potential::vbp: zeros of v^2 - 4g are not all real and simple");
    Potential p;
    p.kind_ = PotentialKind::Vbp;
    p.g_ = g;
    p.v_ = v;
    p.V_ = poly_scale(poly_mul(v, v), 1.0 / (2.0 * g * q));
    p.dV_ = p.V_.derivative();
    return p;
}

Potential Potential::generic(std::vector<double> p_coeffs, double g) {
    if (!(g > 0.0)) throw std::domain_error("Potential::generic: g must be positive");
    Poly pp(std::move(p_coeffs));
    if (pp.degree() < 2 || pp.degree() % 2 != 0 || pp.c.back() <= 0.0)
        throw std::domain_error(
            "Potential::generic: need even leading degree with positive leading coefficient");
    Potential p;
    p.kind_ = PotentialKind::GenericPolynomial;
    p.g_ = g;
    p.V_ = poly_scale(pp, 1.0 / g);
    p.dV_ = p.V_.derivative();
    return p;
}

Potential Potential::quartic_two_well(double m2, double g) {
    return vbp({-m2, 0.0, 1.0}, g);
}

bool Potential::is_even() const {
    for (std::size_t i = 1; i < V_.c.size(); i += 2)
        if (V_.c[i] != 0.0) return false;
    return true;
}

std::string Potential::describe() const {
    switch (kind_) {
        case PotentialKind::Gaussian: return "gaussian(g=" + std::to_string(g_) + ")";
        case PotentialKind::Vbp: return "vbp(q=" + std::to_string(v_.degree()) + ",g=" + std::to_string(g_) + ")";
        default: return "generic(g=" + std::to_string(g_) + ")";
    }
}

} // namespace mmfluct
