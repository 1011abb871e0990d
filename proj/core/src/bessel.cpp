#include "conecalc/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conecalc {

double bessel_j(double nu, double x) {
  if (nu < 0.0) throw std::domain_error("bessel_j: nu must be >= 0");
  if (x < 0.0) throw std::domain_error("bessel_j: x must be >= 0");
  return std::cyl_bessel_j(nu, x);
}

std::vector<double> bessel_zeros(double nu, int count) {
  if (count < 1) throw std::domain_error("bessel_zeros: count must be >= 1");
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(count));

  // J_nu > 0 just right of the origin (leading term of the series), and all
  // positive zeros are simple and lie above nu.  Scan in steps well below
  // the asymptotic zero spacing pi, then bisect each bracket.
  const double step = 3.141592653589793 / 8.0;
  double x = std::max(nu, 1e-3) * 1.0000001 + 1e-6;
  double fx = bessel_j(nu, x);
  while (fx == 0.0) {  // freakishly unlikely; nudge off the zero
    x += 1e-12 * (1.0 + x);
    fx = bessel_j(nu, x);
  }
  const double x_limit = std::max(nu, 1.0) + (count + 4) * 8.0;
  while (static_cast<int>(zeros.size()) < count) {
    double x2 = x + step;
    if (x2 > x_limit)
      throw std::runtime_error("bessel_zeros: scan failed in [0," +
                               std::to_string(x_limit) + "] after finding " +
                               std::to_string(zeros.size()) + " zeros");
    double f2 = bessel_j(nu, x2);
    if (fx == 0.0 || fx * f2 < 0.0) {
      double lo = x, hi = x2, flo = fx;
      for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = bessel_j(nu, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    x = x2;
    fx = f2;
  }
  return zeros;
}

std::vector<double> bessel_mode_eigenvalues(int dim, double lambda_sq,
                                            double x_max, int count) {
  if (dim < 3) throw std::domain_error("bessel_mode_eigenvalues: dim >= 3");
  if (lambda_sq < 0.0)
    throw std::domain_error("bessel_mode_eigenvalues: lambda_sq >= 0");
  if (!(x_max > 0.0))
    throw std::domain_error("bessel_mode_eigenvalues: x_max > 0");
  const double s = (dim - 2) / 2.0;
  const double nubar = std::sqrt(s * s + lambda_sq);
  std::vector<double> mu = bessel_zeros(nubar, count);
  for (double& z : mu) {
    const double k = z / x_max;
    z = 1.0 + k * k;
  }
  return mu;
}

}  // namespace conecalc
