#pragma once

// JSON run configuration shared by the command-line driver and the tests.
// Strict parsing: unknown keys and type mismatches raise ConfigError, which
// the driver maps to exit code 2.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conecalc/cone_model.hpp"
#include "conecalc/experiments.hpp"
#include "conecalc/radial_grid.hpp"

namespace conecalc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int dim = 3;
  double x_max = 1.0;
  int sphere_l_max = -1;          // >= 0: spherical cross-section up to l_max
  std::vector<AngularMode> modes; // explicit mode list (abstract section)
  std::vector<double> warp;       // polynomial coefficients, warp[0] must be 0
  int grid_cells = 240;
  double grid_gamma = 2.0;
  std::vector<double> h_values = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::vector<double> htilde_values;
  bool has_alpha = false;
  double alpha = 0.0;  // resolved default: -(dim-2)/2
  double tau = 0.0;
  std::complex<double> omega = {-1.0, 0.0};
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  int workers = 0;  // 0: automatic
  nlohmann::json experiments = nlohmann::json::object();

  double resolved_alpha() const {
    return has_alpha ? alpha : -(dim - 2) / 2.0;
  }
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

ConeModel model_from_config(const RunConfig& cfg);
RadialGrid grid_from_config(const RunConfig& cfg);

// Per-experiment option structs with the config's override block applied.
DomainEquivalenceOptions domain_equivalence_options(const RunConfig& cfg);
KernelDecayOptions kernel_decay_options(const RunConfig& cfg);
InvertibilityOptions invertibility_options(const RunConfig& cfg);
WavefrontOptions wavefront_options(const RunConfig& cfg);
EllipticityOptions ellipticity_options(const RunConfig& cfg);

}  // namespace conecalc
