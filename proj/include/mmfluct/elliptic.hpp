#pragma once

namespace mmfluct {

// Complete elliptic integral of the first kind, modulus convention:
// K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), 0 <= k < 1.
// Computed by the arithmetic-geometric mean.
double complete_K(double k);

// Complete elliptic integral of the second kind,
// E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 theta) dtheta, 0 <= k <= 1.
double complete_E(double k);

struct JacobiValues {
    double sn, cn, dn;
};

// Jacobi elliptic functions at real u, modulus 0 <= k < 1, via the
// descending Landen / AGM chain with the Gauss transformation backward pass.
JacobiValues jacobi_elliptic(double u, double k);

double jacobi_cn(double u, double k);
double jacobi_sn(double u, double k);
double jacobi_dn(double u, double k);

} // namespace mmfluct
