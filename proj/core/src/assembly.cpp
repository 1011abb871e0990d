#include "conecalc/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace conecalc {

namespace {

// 6-point Gauss-Legendre rule on [-1, 1]; exact through degree 11.
constexpr int kQuadN = 6;
constexpr double kQuadX[kQuadN] = {
    -0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
    0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr double kQuadW[kQuadN] = {
    0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
    0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

template <typename CellTerm>
void for_each_quad_point(const RadialGrid& grid, int cell, CellTerm&& term) {
  const double a = grid.cell_left(cell);
  const double b = grid.cell_right(cell);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int q = 0; q < kQuadN; ++q) {
    const double x = mid + half * kQuadX[q];
    term(x, half * kQuadW[q]);
  }
}

}  // namespace

SymTridiag weighted_value_gram(const RadialGrid& grid,
                               const std::function<double(double)>& w) {
  const int n = grid.dof_count();
  SymTridiag G = SymTridiag::zero(n);
  for (int c = 0; c < grid.cell_count(); ++c) {
    const double a = grid.cell_left(c);
    const double b = grid.cell_right(c);
    const double hc = b - a;
    double m00 = 0, m01 = 0, m11 = 0;
    for_each_quad_point(grid, c, [&](double x, double wq) {
      const double n0 = (b - x) / hc;
      const double n1 = (x - a) / hc;
      const double wx = w(x) * wq;
      m00 += wx * n0 * n0;
      m01 += wx * n0 * n1;
      m11 += wx * n1 * n1;
    });
    G.diag[c] += m00;
    if (c + 1 < n) {
      G.diag[c + 1] += m11;
      G.off[c] += m01;
    }
  }
  return G;
}

SymTridiag weighted_gradient_gram(const RadialGrid& grid,
                                  const std::function<double(double)>& w) {
  const int n = grid.dof_count();
  SymTridiag G = SymTridiag::zero(n);
  for (int c = 0; c < grid.cell_count(); ++c) {
    const double hc = grid.cell_right(c) - grid.cell_left(c);
    double wint = 0;
    for_each_quad_point(grid, c, [&](double x, double wq) { wint += w(x) * wq; });
    const double k = wint / (hc * hc);
    G.diag[c] += k;
    if (c + 1 < n) {
      G.diag[c + 1] += k;
      G.off[c] -= k;
    }
  }
  return G;
}

Eigen::VectorXd weighted_load(const RadialGrid& grid,
                              const std::function<double(double)>& w,
                              const std::function<double(double)>& f) {
  const int n = grid.dof_count();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int c = 0; c < grid.cell_count(); ++c) {
    const double a = grid.cell_left(c);
    const double b = grid.cell_right(c);
    const double hc = b - a;
    for_each_quad_point(grid, c, [&](double x, double wq) {
      const double fw = f(x) * w(x) * wq;
      v[c] += fw * (b - x) / hc;
      if (c + 1 < n) v[c + 1] += fw * (x - a) / hc;
    });
  }
  return v;
}

Eigen::VectorXd interpolate(const RadialGrid& grid,
                            const std::function<double(double)>& f) {
  Eigen::VectorXd v(grid.dof_count());
  for (int i = 0; i < grid.dof_count(); ++i) v[i] = f(grid.dof_x(i));
  return v;
}

Eigen::VectorXcd interpolate_complex(
    const RadialGrid& grid,
    const std::function<std::complex<double>(double)>& f) {
  Eigen::VectorXcd v(grid.dof_count());
  for (int i = 0; i < grid.dof_count(); ++i) v[i] = f(grid.dof_x(i));
  return v;
}

std::function<double(double)> metric_weight(const ConeModel& model) {
  const int n = model.dim;
  const Warp warp = model.warp;
  return [n, warp](double x) {
    return std::pow(x, n - 1) * std::exp((n - 1) * warp(x));
  };
}

RadialOperator assemble_mode_operator(const ConeModel& model,
                                      const RadialGrid& grid, int mode_index,
                                      double h) {
  if (mode_index < 0 ||
      mode_index >= static_cast<int>(model.modes.size()))
    throw std::invalid_argument("assemble_mode_operator: bad mode index");
  if (!(h > 0.0))
    throw std::invalid_argument("assemble_mode_operator: h must be positive");
  if (std::abs(grid.x_max() - model.x_max) > 1e-12 * model.x_max)
    throw std::invalid_argument(
        "assemble_mode_operator: grid does not end at the model's x_max");

  RadialOperator op;
  op.dim = model.dim;
  op.mode = model.modes[static_cast<std::size_t>(mode_index)];
  op.warp = model.warp;
  op.grid = grid;

  const int n = model.dim;
  const Warp warp = model.warp;
  const double lambda_sq = op.mode.lambda_sq;

  op.K = weighted_gradient_gram(grid, metric_weight(model));
  if (lambda_sq != 0.0) {
    // lambda^2 e^{-2 phi} x^{-2} against the metric measure collapses to
    // lambda^2 x^{n-3} e^{(n-3) phi}; integrable at the tip for n >= 3.
    auto potential = [n, warp, lambda_sq](double x) {
      return lambda_sq * std::pow(x, n - 3) * std::exp((n - 3) * warp(x));
    };
    SymTridiag P = weighted_value_gram(grid, potential);
    op.K = add_scaled(1.0, op.K, 1.0, P);
  }
  op.M = weighted_value_gram(grid, metric_weight(model));
  set_semiclassical_parameter(op, h);
  return op;
}

void set_semiclassical_parameter(RadialOperator& op, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("set_semiclassical_parameter: h > 0 required");
  op.h = h;
  op.S = add_scaled(h * h, op.K, 1.0, op.M);
}

}  // namespace conecalc
