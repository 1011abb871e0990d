#pragma once

// Quadrature contours for complex powers.  The integral representation used
// throughout is
//
//   A^w = (i/2pi) \oint lambda^w (A - lambda)^{-1} dlambda,   Re w < 0,
//
// over a keyhole hugging the branch cut (-inf, 0] of the principal power:
// in along {s + i eps : s in [-R, 0]}, clockwise around the origin on the
// semicircle of radius eps through +eps, and back out along the conjugate
// ray.  The spectrum [1, inf) stays at distance >= 1 - eps from every node.
// Truncating the incoming ray at |lambda| = R leaves a tail of size
// ~ R^{Re w} / |Re w|, which the contour reports rather than hides.

#include <complex>
#include <vector>

#include "conecalc/spectral.hpp"

namespace conecalc {

struct ContourNode {
  std::complex<double> lambda;
  std::complex<double> weight;  // includes the (i/2pi) dlambda factor
};

enum class ContourShape {
  horizontal,  // rays parallel to the cut at height ±eps
  radial       // rays t e^{±i(pi - asin eps)}, t in [1, R], same core
};

struct Contour {
  ContourShape shape = ContourShape::horizontal;
  double epsilon = 1e-3;
  double r_max = 1e4;
  int nodes_per_decade = 16;
  std::vector<ContourNode> nodes;  // in traversal order

  double min_distance_to_spectrum() const;  // dist to the ray [1, inf)
  double tail_bound(std::complex<double> w) const;
};

Contour build_contour(double epsilon, double r_max, int nodes_per_decade,
                      ContourShape shape = ContourShape::horizontal);

// Smallest truncation radius for which the reported tail bound at exponent w
// drops below tol, clamped to [10, 1e16].  Requires Re w < 0.
double recommended_r_max(std::complex<double> w, double tol);

// Quadrature approximation of a^w for a scalar a (spectrum point).
std::complex<double> scalar_contour_power(const Contour& contour, double a,
                                          std::complex<double> w);

// max_k |quadrature(nu_k) - nu_k^w|: by simultaneous diagonalization this is
// the M-operator-norm defect of the contour at exponent w.
double contour_defect(const Contour& contour,
                      const Eigen::VectorXd& eigenvalues,
                      std::complex<double> w);

struct ContourApplyResult {
  Eigen::VectorXcd u;
  double tail_bound = 0.0;
  int continuation_order = 0;  // extra operator applications performed
};

// A^w f by contour quadrature; requires Re w < 0.
ContourApplyResult contour_power_apply(const RadialOperator& op,
                                       const Contour& contour,
                                       std::complex<double> w,
                                       const Eigen::VectorXcd& f);

// A^w f for arbitrary w: k = max(0, ceil(Re w) + 1) exact applications of
// the operator composed with the contour at exponent w - k.  Pass a
// nonnegative `order` to override k (must keep Re(w - order) < 0).
ContourApplyResult analytic_continuation_power(const RadialOperator& op,
                                               const Contour& contour,
                                               std::complex<double> w,
                                               const Eigen::VectorXcd& f,
                                               int order = -1);

}  // namespace conecalc
