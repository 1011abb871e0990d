#pragma once

// Deterministic trial families for norm-comparison sweeps: low eigenvectors
// of the assembled pencil, tip-concentrated power bumps, and oscillatory
// wave packets.  Ids are stable so reports can point at the extremizers.

#include <string>
#include <vector>

#include "conecalc/spectral.hpp"

namespace conecalc {

struct TrialFunction {
  std::string id;
  int mode_index = 0;
  Eigen::VectorXcd values;
};

struct TrialCounts {
  int eigenvectors = 30;
  int bumps = 10;
  int packets = 5;
};

std::vector<TrialFunction> build_trial_set(const ConeModel& model,
                                           const RadialGrid& grid,
                                           int mode_index, double h,
                                           const SpectralDecomposition* dec,
                                           const TrialCounts& counts = {});

}  // namespace conecalc
