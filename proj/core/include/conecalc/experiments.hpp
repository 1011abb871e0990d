#pragma once

// Desk-scale verification experiments for the uniform structure claims:
// each one computes a family of diagnostics over a parameter sweep, compares
// against an independently predicted value, and reports a verdict.  FAIL
// means a quantitative assertion was violated; INCONCLUSIVE means the data
// could not support the assertion (too few usable samples, values at the
// numerical floor) and is reported rather than hidden.

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "conecalc/cone_model.hpp"
#include "conecalc/contour.hpp"
#include "conecalc/norms.hpp"
#include "conecalc/radial_grid.hpp"

namespace conecalc {

enum class Verdict { PASS, FAIL, INCONCLUSIVE };
const char* verdict_name(Verdict v);

struct ExperimentReport {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json metrics = nlohmann::json::object();
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::vector<std::string> notes;
  nlohmann::json provenance = nlohmann::json::object();

  nlohmann::json to_json() const;
};

nlohmann::json make_provenance(const ConeModel& model, const RadialGrid* grid,
                               const nlohmann::json& tolerances,
                               std::uint64_t seed);

// --- small statistics helpers (shared and unit-tested) ----------------------

// Kendall rank correlation (tau-a) of paired samples.
double kendall_tau(const std::vector<double>& a, const std::vector<double>& b);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  int count = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
LineFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

// --- experiment 1: operator-domain vs weighted-norm equivalence -------------

struct DomainEquivalenceOptions {
  std::vector<double> h_values = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::vector<double> asserted_w = {-1.0, -0.5, 0.5, 1.0};
  std::vector<double> exploratory_w;  // defaults to {dim/2} at runtime
  double max_kendall_tau = 0.5;
  double max_constant_drift = 3.0;  // max C(h) / min C(h)
  int trial_modes = 2;              // how many listed modes get trial sets
};

ExperimentReport domain_equivalence_experiment(
    const ConeModel& model, const RadialGrid& grid,
    const DomainEquivalenceOptions& opt = {});

// --- experiment 2: kernel decay toward the tip ------------------------------

struct KernelDecayOptions {
  std::vector<int> powers = {-1, -2};  // integer orders w of the kernel
  double source_x = 0.5;               // relative to x_max
  double window_lo = 1e-3;             // fit window, relative to x_max
  double window_hi = 0.05;
  double slope_tolerance = 0.02;  // x max(1, |expected|)
  int min_window_nodes = 6;
  double floor_factor = 1e-13;  // values below floor_factor*max are noise
  double max_fit_residual = 0.15;
};

ExperimentReport kernel_decay_experiment(const ConeModel& model,
                                         const RadialGrid& grid,
                                         const KernelDecayOptions& opt = {});

// --- experiment 3: two-parameter invertibility sweep -------------------------

struct InvertibilityOptions {
  std::vector<double> h_values;       // default 2^-2 .. 2^-9
  std::vector<double> htilde_values;  // default 2^-2 .. 2^-9
  std::complex<double> omega = {-1.0, 0.0};
  double relative_tolerance = 0.10;
};

ExperimentReport two_parameter_invertibility_sweep(
    const ConeModel& model, const RadialGrid& grid,
    const InvertibilityOptions& opt = {});

// --- experiment 4: wave-packet localization under powers --------------------

struct WavefrontOptions {
  // The width scale and window sizes are balanced so that both the position
  // and the frequency leakage decay measurably over this h range before
  // hitting the numerical floor (coherent-state scaling sigma ~ sqrt(h)
  // makes both out-masses exp(-c/h); c must be O(h_max)).
  std::vector<double> h_values = {0.125,    0.0625,    0.03125,
                                  0.015625, 0.0078125, 0.00390625};
  double packet_center = 0.5625;     // relative to x_max
  double packet_freq = 1.0;          // semiclassical frequency xi0
  double packet_width_scale = 0.31;  // sigma = scale * x_max * sqrt(h)
  double position_window = 0.28125;  // half-width, relative to x_max
  double frequency_window = 0.75;    // half-width around xi0
  std::vector<double> power_orders = {-0.5, 0.5};  // l in [A^{l/2}, A - 2]
  double commutator_tolerance = 1e-8;
  double mass_floor = 1e-14;
  double min_decay_slope = 0.9;
};

ExperimentReport wavefront_preservation_experiment(
    const ConeModel& model, const WavefrontOptions& opt = {});

// --- experiment 5: full ellipticity / admissibility check -------------------

struct EllipticityOptions {
  std::complex<double> omega = {-1.0, 0.0};
  double min_symbol_margin = 0.05;
  double tf_xhat_max = 20.0;
  std::vector<double> tf_sweep_xhat = {40.0, 80.0};
  int tf_cells = 600;
  double decay_rate_tolerance = 0.05;     // relative, around 1
  double indicial_slope_tolerance = 0.05; // relative
};

ExperimentReport full_ellipticity_check(const ConeModel& model, double alpha,
                                        const EllipticityOptions& opt = {});

}  // namespace conecalc
