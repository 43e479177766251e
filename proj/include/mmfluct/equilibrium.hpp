#pragma once
#include "mmfluct/potential.hpp"
#include "mmfluct/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mmfluct {

struct Band {
    double lo = 0.0, hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Ordered disjoint intervals [a_1,b_1] < ... < [a_q,b_q].
struct SupportBands {
    std::vector<Band> bands;

    SupportBands() = default;
    explicit SupportBands(std::vector<Band> b);

    int q() const { return static_cast<int>(bands.size()); }
    double lo() const { return bands.front().lo; }
    double hi() const { return bands.back().hi; }
    bool contains(double x) const;
    // index of the band containing x, or -1
    int band_of(double x) const;
    bool symmetric(double tol = 1e-12) const;
};

enum class MeasureTag { Semicircle, Vbp, QuarticSym, Numeric };

// Unit measure with density rho on its support bands, plus the gap charges
// beta_l = mass of [a_{l+1}, infinity).
struct EquilibriumMeasure {
    SupportBands support;
    std::function<double(double)> density;
    std::vector<double> charges;
    MeasureTag tag = MeasureTag::Numeric;

    // discrete representation, present only for minimizer output
    std::vector<double> grid;
    std::vector<double> masses;
    double cell = 0.0;

    double total_mass() const;
};

// Minimizer of the logarithmic energy on fixed support (no external field);
// frequencies alpha_l = mass of [a_{l+1}, infinity).
struct RobinMeasure {
    SupportBands support;
    std::function<double(double)> density;
    std::vector<double> frequencies;
    double total_mass() const;
    double counting(double lambda) const; // nu([lambda, infinity))
};

// integral of f against dlambda over one band, cosine substitution
// (handles both sqrt-vanishing and inverse-sqrt-divergent edge behavior)
double band_integrate(const std::function<double(double)>& f, const Band& band,
                      int panels = 8, int order = 32);
double band_integrate_partial(const std::function<double(double)>& f, const Band& band,
                              double from, double to, int panels = 8, int order = 32);

// ---- closed-form equilibrium measures ----

// single band [-2 sqrt(g), 2 sqrt(g)], density sqrt(4g - x^2)/(2 pi g)
EquilibriumMeasure semicircle_measure(double g);

// support {v^2 <= 4g}, density |v'| sqrt(4g - v^2) / (2 pi g q),
// charges beta_l = (q-l)/q
EquilibriumMeasure vbp_measure(const Poly& v, double g);

// two symmetric bands [-b,-a] u [a,b], a = sqrt(m2-2 sqrt g), b = sqrt(m2+2 sqrt g)
EquilibriumMeasure quartic_two_well_measure(double m2, double g);

// ---- general machinery ----

// density rho = P sqrt(R_q) reconstructed from a candidate support by
// quadrature of the divided-difference integral for P; throws if the
// resulting density is negative on the support
EquilibriumMeasure dos_from_support(const Potential& V, const SupportBands& support);

struct MinimizeOptions {
    double lo = 0.0, hi = 0.0;   // grid interval (must contain the support)
    int grid_points = 2000;
    int max_iters = 40000;
    double tol = 1e-9;           // projected-gradient residual
    double band_threshold = 1e-6; // x max weight
    int threads = 0;              // 0 = hardware concurrency
};

// Projected-gradient (FISTA) minimization of the discretized energy
// functional over unit-mass nonnegative weights; detects bands and charges.
EquilibriumMeasure minimize_energy(const Potential& V, const MinimizeOptions& opt);

// max_{sigma} |V_eff - F| + max_{off sigma} (F - V_eff)_+ with
// V_eff = V - 2 int log|.-mu| dN(mu) and F the median of V_eff on sigma
double euler_lagrange_residual(const Potential& V, const EquilibriumMeasure& m);

// N(lambda) = N([lambda, infinity)), monotone non-increasing
double counting_function(const EquilibriumMeasure& m, double lambda);

// nu-density |x| / (pi sqrt|(b^2-x^2)(x^2-a^2)|) on [-b,-a] u [a,b]; alpha_1 = 1/2
RobinMeasure robin_measure_two_sym(double a, double b);

struct NuConsistencyReport {
    std::vector<double> probes;
    std::vector<double> lhs;          // d/dg (g N(lambda, g)) by central difference
    std::vector<double> rhs;          // nu([lambda, infinity))
    double max_discrepancy = 0.0;
};

// checks d/dg (g N(lambda,g)) against the fixed-support minimizer's counting
// function for potentials with closed-form measures (vbp / quartic-sym)
NuConsistencyReport nu_as_g_derivative(const Potential& V, double step = 1e-4);

// Variational derivative of the charge beta_1 under V -> V + eps*phi for a
// symmetric two-band support (q=2 only).  Linear in phi; vanishes for even
// phi.  For phi(x) = t x equals -t b / (4 K(a/b)).
double beta_dot(const std::function<double(double)>& phi, const SupportBands& support);

// gap-cycle period integral I = int_gap dmu/sqrt|R2| = (2/b) K(a/b)
double gap_period_two_sym(double a, double b);

} // namespace mmfluct
