#pragma once

// Radial meshes on [0, x_max] for piecewise-linear elements.  The basis
// includes the hat centered at the tip x = 0 (the tip carries no boundary
// condition; points have zero capacity in dimension >= 3) and imposes a
// Dirichlet condition at x_max, so a mesh with N cells carries N degrees of
// freedom: the tip and the interior nodes x_1 .. x_{N-1}.

#include <vector>

namespace conecalc {

struct RadialGrid {
  std::vector<double> nodes;  // x_1 < ... < x_N = x_max, all positive
  double gamma = 1.0;         // grading exponent used to build the mesh

  // Nodes x_i = (i/N)^gamma * x_max.  gamma = 1 is uniform; gamma > 1
  // clusters nodes at the tip.
  static RadialGrid graded(int n_cells, double gamma, double x_max);
  static RadialGrid uniform(int n_cells, double x_max);

  int cell_count() const { return static_cast<int>(nodes.size()); }
  int dof_count() const { return cell_count(); }
  double x_max() const { return nodes.back(); }

  // Position of degree of freedom i (0 is the tip).
  double dof_x(int i) const { return i == 0 ? 0.0 : nodes[i - 1]; }
  double cell_left(int c) const { return c == 0 ? 0.0 : nodes[c - 1]; }
  double cell_right(int c) const { return nodes[c]; }

  void validate() const;  // throws std::invalid_argument on structural faults
};

}  // namespace conecalc
