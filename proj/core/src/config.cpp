#include "conecalc/config.hpp"

#include <fstream>
#include <set>

namespace conecalc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const nlohmann::json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(where + ": unknown key '" + it.key() + "'");
}

double as_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

int as_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

std::vector<double> as_number_list(const nlohmann::json& j,
                                   const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v, where + " entry"));
  return out;
}

std::complex<double> as_omega(const nlohmann::json& j,
                              const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  check_keys(j, where, {"re", "im"});
  double re = 0, im = 0;
  if (j.contains("re")) re = as_number(j["re"], where + ".re");
  if (j.contains("im")) im = as_number(j["im"], where + ".im");
  return {re, im};
}

const nlohmann::json* experiment_block(const RunConfig& cfg,
                                       const std::string& name,
                                       const std::set<std::string>& allowed) {
  if (!cfg.experiments.contains(name)) return nullptr;
  const nlohmann::json& b = cfg.experiments.at(name);
  check_keys(b, "experiments." + name, allowed);
  return &b;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
  check_keys(j, "config",
             {"dim", "x_max", "sphere_l_max", "modes", "warp", "grid",
              "h_values", "htilde_values", "alpha", "tau", "omega", "seed",
              "output_dir", "workers", "experiments"});
  RunConfig cfg;
  if (j.contains("dim")) cfg.dim = as_int(j["dim"], "dim");
  if (j.contains("x_max")) cfg.x_max = as_number(j["x_max"], "x_max");
  if (j.contains("sphere_l_max"))
    cfg.sphere_l_max = as_int(j["sphere_l_max"], "sphere_l_max");
  if (j.contains("modes")) {
    if (!j["modes"].is_array()) fail("modes: expected an array");
    int idx = 0;
    for (const auto& m : j["modes"]) {
      check_keys(m, "modes entry", {"lambda_sq", "multiplicity"});
      AngularMode mode;
      mode.index = idx++;
      if (!m.contains("lambda_sq")) fail("modes entry: lambda_sq required");
      mode.lambda_sq = as_number(m["lambda_sq"], "modes.lambda_sq");
      mode.multiplicity =
          m.contains("multiplicity")
              ? as_int(m["multiplicity"], "modes.multiplicity")
              : 1;
      cfg.modes.push_back(mode);
    }
  }
  if (j.contains("warp")) cfg.warp = as_number_list(j["warp"], "warp");
  if (j.contains("grid")) {
    check_keys(j["grid"], "grid", {"cells", "gamma"});
    if (j["grid"].contains("cells"))
      cfg.grid_cells = as_int(j["grid"]["cells"], "grid.cells");
    if (j["grid"].contains("gamma"))
      cfg.grid_gamma = as_number(j["grid"]["gamma"], "grid.gamma");
  }
  if (j.contains("h_values"))
    cfg.h_values = as_number_list(j["h_values"], "h_values");
  if (j.contains("htilde_values"))
    cfg.htilde_values = as_number_list(j["htilde_values"], "htilde_values");
  if (j.contains("alpha")) {
    cfg.alpha = as_number(j["alpha"], "alpha");
    cfg.has_alpha = true;
  }
  if (j.contains("tau")) cfg.tau = as_number(j["tau"], "tau");
  if (j.contains("omega")) cfg.omega = as_omega(j["omega"], "omega");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("seed: expected an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) fail("output_dir: expected a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("workers")) cfg.workers = as_int(j["workers"], "workers");
  if (j.contains("experiments")) {
    if (!j["experiments"].is_object()) fail("experiments: expected an object");
    static const std::set<std::string> names = {
        "domain-equivalence", "kernel-decay", "invertibility", "wavefront",
        "ellipticity"};
    for (auto it = j["experiments"].begin(); it != j["experiments"].end(); ++it)
      if (!names.count(it.key()))
        fail("experiments: unknown experiment '" + it.key() + "'");
    cfg.experiments = j["experiments"];
  }

  if (cfg.sphere_l_max >= 0 && !cfg.modes.empty())
    fail("config: sphere_l_max and modes are mutually exclusive");
  if (cfg.sphere_l_max < 0 && cfg.modes.empty())
    fail("config: one of sphere_l_max or modes is required");
  if (cfg.grid_cells < 4) fail("grid.cells: must be at least 4");
  if (cfg.grid_gamma < 1.0) fail("grid.gamma: must be at least 1");
  if (cfg.workers < 0) fail("workers: must be non-negative");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_run_config(j);
}

ConeModel model_from_config(const RunConfig& cfg) {
  Warp warp;
  warp.coeffs = cfg.warp;
  ConeModel model;
  if (cfg.sphere_l_max >= 0) {
    model = make_sphere_model(cfg.dim, cfg.x_max, cfg.sphere_l_max, warp);
  } else {
    model.dim = cfg.dim;
    model.x_max = cfg.x_max;
    model.modes = cfg.modes;
    model.warp = warp;
    model.modes_complete = true;
  }
  auto diagnostics = validate_model(model);
  for (const auto& d : diagnostics)
    if (d.severity == ModelDiagnostic::Severity::violation)
      fail("model: " + d.code + ": " + d.message);
  return model;
}

RadialGrid grid_from_config(const RunConfig& cfg) {
  return RadialGrid::graded(cfg.grid_cells, cfg.grid_gamma, cfg.x_max);
}

DomainEquivalenceOptions domain_equivalence_options(const RunConfig& cfg) {
  DomainEquivalenceOptions opt;
  opt.h_values = cfg.h_values;
  const auto* b = experiment_block(
      cfg, "domain-equivalence",
      {"h_values", "asserted_w", "exploratory_w", "max_kendall_tau",
       "max_constant_drift", "trial_modes"});
  if (!b) return opt;
  if (b->contains("h_values"))
    opt.h_values = as_number_list((*b)["h_values"], "h_values");
  if (b->contains("asserted_w"))
    opt.asserted_w = as_number_list((*b)["asserted_w"], "asserted_w");
  if (b->contains("exploratory_w"))
    opt.exploratory_w = as_number_list((*b)["exploratory_w"], "exploratory_w");
  if (b->contains("max_kendall_tau"))
    opt.max_kendall_tau = as_number((*b)["max_kendall_tau"], "max_kendall_tau");
  if (b->contains("max_constant_drift"))
    opt.max_constant_drift =
        as_number((*b)["max_constant_drift"], "max_constant_drift");
  if (b->contains("trial_modes"))
    opt.trial_modes = as_int((*b)["trial_modes"], "trial_modes");
  return opt;
}

KernelDecayOptions kernel_decay_options(const RunConfig& cfg) {
  KernelDecayOptions opt;
  const auto* b = experiment_block(
      cfg, "kernel-decay",
      {"powers", "source_x", "window_lo", "window_hi", "slope_tolerance",
       "min_window_nodes", "floor_factor", "max_fit_residual"});
  if (!b) return opt;
  if (b->contains("powers")) {
    opt.powers.clear();
    for (double p : as_number_list((*b)["powers"], "powers"))
      opt.powers.push_back(static_cast<int>(p));
  }
  if (b->contains("source_x"))
    opt.source_x = as_number((*b)["source_x"], "source_x");
  if (b->contains("window_lo"))
    opt.window_lo = as_number((*b)["window_lo"], "window_lo");
  if (b->contains("window_hi"))
    opt.window_hi = as_number((*b)["window_hi"], "window_hi");
  if (b->contains("slope_tolerance"))
    opt.slope_tolerance = as_number((*b)["slope_tolerance"], "slope_tolerance");
  if (b->contains("min_window_nodes"))
    opt.min_window_nodes = as_int((*b)["min_window_nodes"], "min_window_nodes");
  if (b->contains("floor_factor"))
    opt.floor_factor = as_number((*b)["floor_factor"], "floor_factor");
  if (b->contains("max_fit_residual"))
    opt.max_fit_residual =
        as_number((*b)["max_fit_residual"], "max_fit_residual");
  return opt;
}

InvertibilityOptions invertibility_options(const RunConfig& cfg) {
  InvertibilityOptions opt;
  opt.h_values = cfg.h_values;
  opt.htilde_values = cfg.htilde_values;
  opt.omega = cfg.omega;
  const auto* b = experiment_block(
      cfg, "invertibility",
      {"h_values", "htilde_values", "omega", "relative_tolerance"});
  if (!b) return opt;
  if (b->contains("h_values"))
    opt.h_values = as_number_list((*b)["h_values"], "h_values");
  if (b->contains("htilde_values"))
    opt.htilde_values = as_number_list((*b)["htilde_values"], "htilde_values");
  if (b->contains("omega")) opt.omega = as_omega((*b)["omega"], "omega");
  if (b->contains("relative_tolerance"))
    opt.relative_tolerance =
        as_number((*b)["relative_tolerance"], "relative_tolerance");
  return opt;
}

WavefrontOptions wavefront_options(const RunConfig& cfg) {
  WavefrontOptions opt;
  const auto* b = experiment_block(
      cfg, "wavefront",
      {"h_values", "packet_center", "packet_freq", "packet_width_scale",
       "position_window", "frequency_window", "power_orders",
       "commutator_tolerance", "mass_floor", "min_decay_slope"});
  if (!b) return opt;
  if (b->contains("h_values"))
    opt.h_values = as_number_list((*b)["h_values"], "h_values");
  if (b->contains("packet_center"))
    opt.packet_center = as_number((*b)["packet_center"], "packet_center");
  if (b->contains("packet_freq"))
    opt.packet_freq = as_number((*b)["packet_freq"], "packet_freq");
  if (b->contains("packet_width_scale"))
    opt.packet_width_scale =
        as_number((*b)["packet_width_scale"], "packet_width_scale");
  if (b->contains("position_window"))
    opt.position_window = as_number((*b)["position_window"], "position_window");
  if (b->contains("frequency_window"))
    opt.frequency_window =
        as_number((*b)["frequency_window"], "frequency_window");
  if (b->contains("power_orders"))
    opt.power_orders = as_number_list((*b)["power_orders"], "power_orders");
  if (b->contains("commutator_tolerance"))
    opt.commutator_tolerance =
        as_number((*b)["commutator_tolerance"], "commutator_tolerance");
  if (b->contains("mass_floor"))
    opt.mass_floor = as_number((*b)["mass_floor"], "mass_floor");
  if (b->contains("min_decay_slope"))
    opt.min_decay_slope = as_number((*b)["min_decay_slope"], "min_decay_slope");
  return opt;
}

EllipticityOptions ellipticity_options(const RunConfig& cfg) {
  EllipticityOptions opt;
  opt.omega = cfg.omega;
  const auto* b = experiment_block(
      cfg, "ellipticity",
      {"omega", "min_symbol_margin", "tf_xhat_max", "tf_sweep_xhat",
       "tf_cells", "decay_rate_tolerance", "indicial_slope_tolerance"});
  if (!b) return opt;
  if (b->contains("omega")) opt.omega = as_omega((*b)["omega"], "omega");
  if (b->contains("min_symbol_margin"))
    opt.min_symbol_margin =
        as_number((*b)["min_symbol_margin"], "min_symbol_margin");
  if (b->contains("tf_xhat_max"))
    opt.tf_xhat_max = as_number((*b)["tf_xhat_max"], "tf_xhat_max");
  if (b->contains("tf_sweep_xhat"))
    opt.tf_sweep_xhat = as_number_list((*b)["tf_sweep_xhat"], "tf_sweep_xhat");
  if (b->contains("tf_cells"))
    opt.tf_cells = as_int((*b)["tf_cells"], "tf_cells");
  if (b->contains("decay_rate_tolerance"))
    opt.decay_rate_tolerance =
        as_number((*b)["decay_rate_tolerance"], "decay_rate_tolerance");
  if (b->contains("indicial_slope_tolerance"))
    opt.indicial_slope_tolerance =
        as_number((*b)["indicial_slope_tolerance"], "indicial_slope_tolerance");
  return opt;
}

}  // namespace conecalc
