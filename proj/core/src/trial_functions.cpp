#include "conecalc/trial_functions.hpp"

#include <cmath>
#include <cstdio>

#include "conecalc/assembly.hpp"

namespace conecalc {

std::vector<TrialFunction> build_trial_set(const ConeModel& model,
                                           const RadialGrid& grid,
                                           int mode_index, double h,
                                           const SpectralDecomposition* dec,
                                           const TrialCounts& counts) {
  std::vector<TrialFunction> out;
  char id[64];
  const double xm = model.x_max;

  if (dec) {
    const int n_eig = std::min(counts.eigenvectors, dec->size());
    for (int k = 0; k < n_eig; ++k) {
      std::snprintf(id, sizeof id, "eig-%02d", k);
      TrialFunction t;
      t.id = id;
      t.mode_index = mode_index;
      t.values = dec->vectors.col(k).cast<std::complex<double>>();
      out.push_back(std::move(t));
    }
  }

  // Tip bumps x^beta with a smooth falloff toward the outer boundary.
  for (int b = 0; b < counts.bumps; ++b) {
    const double beta =
        0.25 + (counts.bumps > 1 ? b * (2.75 / (counts.bumps - 1)) : 0.0);
    std::snprintf(id, sizeof id, "bump-%.3f", beta);
    TrialFunction t;
    t.id = id;
    t.mode_index = mode_index;
    t.values = interpolate_complex(grid, [beta, xm](double x) {
      return std::complex<double>(
          std::pow(x / xm, beta) * std::exp(-8.0 * (x / xm) * (x / xm)), 0.0);
    });
    double peak = t.values.cwiseAbs().maxCoeff();
    if (peak > 0) t.values /= peak;
    out.push_back(std::move(t));
  }

  // Oscillatory packets at fixed phase-space offsets.
  const double centers[5] = {0.30, 0.50, 0.70, 0.40, 0.60};
  const double freqs[5] = {0.8, 1.0, 1.2, -0.9, 1.5};
  for (int p = 0; p < std::min(counts.packets, 5); ++p) {
    const double x0 = centers[p] * xm;
    const double xi = freqs[p];
    const double sig = 0.1 * xm;
    std::snprintf(id, sizeof id, "packet-%d", p);
    TrialFunction t;
    t.id = id;
    t.mode_index = mode_index;
    t.values = interpolate_complex(grid, [x0, xi, sig, h](double x) {
      const double envelope = std::exp(-((x - x0) * (x - x0)) / (2 * sig * sig));
      return envelope * std::exp(std::complex<double>(0.0, xi * x / h));
    });
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace conecalc
