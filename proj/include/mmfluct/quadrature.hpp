#pragma once
#include <vector>
#include <functional>
#include <cstddef>

namespace mmfluct {

// Nodes and positive weights of a quadrature rule on [a,b].
// Gauss-Legendre rules of order n are exact for polynomials of degree 2n-1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;

    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule mapped to [a,b].  Nodes are found by Newton iteration
// on the Legendre recurrence carried out in double-double arithmetic.
QuadratureRule gauss_legendre(int order, double a, double b);

// One rule per panel, concatenated.  breaks must be increasing.
QuadratureRule composite_gauss_legendre(const std::vector<double>& breaks, int order);

// Equal-width panels on [a,b].
std::vector<double> uniform_breaks(double a, double b, int panels);

// Panel edges accumulating geometrically toward `point` from both sides
// within [a,b]; finest panel ~ `scale`.  Used for integrable singularities.
std::vector<double> graded_breaks(double a, double b, double point, double scale,
                                  double ratio = 2.0);

// Adaptive Simpson, used as an independent oracle and for diagnostics.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48);

} // namespace mmfluct
