#pragma once
#include "mmfluct/potential.hpp"
#include "mmfluct/quadrature.hpp"

#include <memory>
#include <vector>

namespace mmfluct {

// Jacobi coefficients of the orthonormal system for the weight e^{-nV}:
//   r_l psi_{l+1} + s_l psi_l + r_{l-1} psi_{l-1} = x psi_l.
struct RecurrenceTable {
    int n = 0;
    int L = 0;                  // r holds l = 0..L-1, s holds l = 0..L
    std::vector<double> r, s;
    double mu0 = 0.0;           // zeroth moment of e^{-nV}
    double precision_loss_estimate = 0.0; // decimal digits
    double window_lo = 0.0, window_hi = 0.0;
    QuadratureRule master;      // bare composite rule on the window (no weight factor)
};

// Discretized Stieltjes procedure in double-double arithmetic against a
// composite Gauss-Legendre rule on a window where the truncated mass of
// e^{-nV} x (polynomial)^2 stays below ~1e-40.
RecurrenceTable stieltjes_recurrence(const Potential& V, int n, int L);

// Wavefunctions psi_l = e^{-nV/2} P_l evaluated on a grid.
struct WaveFunctionGrid {
    std::shared_ptr<const RecurrenceTable> table;
    std::shared_ptr<const Potential> potential;
    int n = 0;
    int L = 0;
    std::vector<double> nodes;
    std::vector<double> weights;              // empty for a bare point grid
    std::vector<std::vector<double>> psi;     // psi[l][i], l = 0..L

    // sum_i w_i f(x_i), requires weights
    double quad(const std::vector<double>& values) const;
};

// Forward three-term recurrence seeded by psi_0 = e^{-nV/2}/sqrt(mu0).
WaveFunctionGrid evaluate_psi(const std::shared_ptr<const RecurrenceTable>& table,
                              const Potential& V, const std::vector<double>& grid,
                              int up_to_degree = -1);

// Same, on the table's master quadrature rule (weights attached).
WaveFunctionGrid evaluate_psi_master(const std::shared_ptr<const RecurrenceTable>& table,
                                     const Potential& V, int up_to_degree = -1);

// Christoffel-Darboux kernel K_n of the first n wavefunctions.
class CDKernel {
public:
    CDKernel(const WaveFunctionGrid& wf);

    int n() const { return n_; }
    double r_top() const { return r_top_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // cached-node access
    double at(std::size_t i, std::size_t j) const;
    double diag(std::size_t i) const;

    // arbitrary-point evaluation (rolling recurrence, O(n) per point)
    double eval(double x, double y) const;
    double eval_diag(double x) const;
    void wave_pair(double x, double& psi_nm1, double& psi_n) const;

    double window_lo() const;
    double window_hi() const;

private:
    void columns(double x, double& pnm1, double& pn, double& dpnm1, double& dpn) const;

    std::shared_ptr<const RecurrenceTable> table_;
    std::shared_ptr<const Potential> potential_;
    int n_ = 0;
    double r_top_ = 0.0;
    std::vector<double> nodes_, weights_;
    std::vector<double> psi_nm1_, psi_n_, dpsi_nm1_, dpsi_n_;
};

CDKernel cd_kernel(const WaveFunctionGrid& wf);

// Gram matrix G_jk = int e^{-phi} psi_j psi_k, j,k = 0..n-1, by grid quadrature.
std::vector<double> gram_matrix(const WaveFunctionGrid& wf,
                                const std::function<double(double)>& phi);

// Deviations of r_{n+k-1}^{(n)} from the two-band limit pair (b -+ a)/2 and
// from the elliptic coefficient profile, for a symmetric two-band potential;
// for single-band potentials compares against the constant limit.
struct ProfileRow {
    int n = 0;
    double max_dev_pair = 0.0;   // vs (b - (-1)^{n+k} a)/2
    double max_dev_profile = 0.0; // vs R((n+k)/2)
    bool alternation_ok = true;  // sign of r_{n+k} - r_{n+k-1} flips with k
};
std::vector<ProfileRow> recurrence_limit_profile(const Potential& V,
                                                 const std::vector<int>& n_list,
                                                 int k_range);

} // namespace mmfluct
