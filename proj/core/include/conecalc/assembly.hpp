#pragma once

// Galerkin assembly of the per-mode radial operators
//   S = h^2 K + M
// where K realizes the mode Laplacian's quadratic form
//   k(u, v) = ∫ (u' v' + lambda^2 e^{-2 phi} x^{-2} u v) x^{n-1} e^{(n-1)phi} dx
// and M is the mass form in the same metric measure.  All integrals use a
// fixed 6-point Gauss-Legendre rule per cell, so S - M = h^2 K holds exactly
// in floating point by construction.

#include <functional>

#include "conecalc/cone_model.hpp"
#include "conecalc/radial_grid.hpp"
#include "conecalc/tridiagonal.hpp"

namespace conecalc {

struct RadialOperator {
  int dim = 3;
  AngularMode mode;
  Warp warp;
  double h = 1.0;
  RadialGrid grid;
  SymTridiag K;  // gradient + angular potential form (independent of h)
  SymTridiag M;  // metric mass form
  SymTridiag S;  // h^2 K + M
};

RadialOperator assemble_mode_operator(const ConeModel& model,
                                      const RadialGrid& grid, int mode_index,
                                      double h);

// Rebuild S for a new h from the stored K and M (exact tridiagonal update).
void set_semiclassical_parameter(RadialOperator& op, double h);

// Gram matrix of the hat basis against the measure w(x) dx.
SymTridiag weighted_value_gram(const RadialGrid& grid,
                               const std::function<double(double)>& w);

// Gram matrix of the broken first derivatives against w(x) dx.
SymTridiag weighted_gradient_gram(const RadialGrid& grid,
                                  const std::function<double(double)>& w);

// Load vector ∫ f(x) hat_i(x) w(x) dx for a scalar function f.
Eigen::VectorXd weighted_load(const RadialGrid& grid,
                              const std::function<double(double)>& w,
                              const std::function<double(double)>& f);

// Nodal interpolant of a function (values at the dof positions).
Eigen::VectorXd interpolate(const RadialGrid& grid,
                            const std::function<double(double)>& f);
Eigen::VectorXcd interpolate_complex(
    const RadialGrid& grid,
    const std::function<std::complex<double>(double)>& f);

// Metric measure density x^{n-1} e^{(n-1) phi(x)} of the model.
std::function<double(double)> metric_weight(const ConeModel& model);

}  // namespace conecalc
