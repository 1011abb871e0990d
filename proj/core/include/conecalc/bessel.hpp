#pragma once

// Reference eigenvalues for the exact unwarped cone: the mode Laplacian on
// [0, x_max] with a Dirichlet condition at x_max has eigenfunctions
// x^{-(n-2)/2} J_nubar(sqrt(mu) x) with nubar = sqrt(((n-2)/2)^2 + lambda^2),
// so mu runs over (j_{nubar,m} / x_max)^2 with j_{nubar,m} the positive
// zeros of the Bessel function J_nubar.

#include <vector>

namespace conecalc {

// J_nu(x) for nu >= 0, x >= 0 (standard library evaluation).
double bessel_j(double nu, double x);

// First `count` positive zeros of J_nu, found by sign-change scan plus
// bisection; accurate to ~1e-14 relative.
std::vector<double> bessel_zeros(double nu, int count);

// Eigenvalues of h^2 * (mode Laplacian) + 1 at h = 1 for the exact cone:
// 1 + (j_{nubar,m}/x_max)^2, m = 1..count.
std::vector<double> bessel_mode_eigenvalues(int dim, double lambda_sq,
                                            double x_max, int count);

}  // namespace conecalc
