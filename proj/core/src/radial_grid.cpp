#include "conecalc/radial_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conecalc {

RadialGrid RadialGrid::graded(int n_cells, double gamma, double x_max) {
  if (n_cells < 4)
    throw std::invalid_argument("RadialGrid: need at least 4 cells");
  if (!(gamma >= 1.0))
    throw std::invalid_argument("RadialGrid: grading exponent must be >= 1");
  if (!(x_max > 0.0))
    throw std::invalid_argument("RadialGrid: x_max must be positive");
  RadialGrid g;
  g.gamma = gamma;
  g.nodes.resize(static_cast<std::size_t>(n_cells));
  for (int i = 1; i <= n_cells; ++i)
    g.nodes[i - 1] =
        std::pow(static_cast<double>(i) / n_cells, gamma) * x_max;
  g.nodes.back() = x_max;  // exact, independent of rounding in pow
  g.validate();
  return g;
}

RadialGrid RadialGrid::uniform(int n_cells, double x_max) {
  return graded(n_cells, 1.0, x_max);
}

void RadialGrid::validate() const {
  if (nodes.size() < 4)
    throw std::invalid_argument("RadialGrid: need at least 4 cells");
  if (!(nodes.front() > 0.0))
    throw std::invalid_argument("RadialGrid: first node must be positive");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument(
          "RadialGrid: nodes not strictly increasing at position " +
          std::to_string(i));
}

}  // namespace conecalc
