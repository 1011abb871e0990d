#include "conecalc/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "conecalc/assembly.hpp"
#include "conecalc/config.hpp"
#include "conecalc/contour.hpp"
#include "conecalc/experiments.hpp"
#include "conecalc/index_set.hpp"
#include "conecalc/norms.hpp"
#include "conecalc/spectral.hpp"
#include "conecalc/version.hpp"

namespace conecalc {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path);
  out << content;
}

std::string out_path(const RunConfig& cfg, const std::string& explicit_path,
                     const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  return (std::filesystem::path(cfg.output_dir) / default_name).string();
}

nlohmann::json index_set_json(const IndexSet& set) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : set.entries()) {
    nlohmann::json row;
    row["re"] = e.z.real();
    row["im"] = e.z.imag();
    row["k"] = e.k;
    entries.push_back(row);
  }
  nlohmann::json j;
  j["cutoff"] = set.cutoff();
  j["entries"] = entries;
  return j;
}

nlohmann::json family_json(const IndexFamily& fam) {
  nlohmann::json j;
  j["lb"] = index_set_json(fam.lb);
  j["ff"] = index_set_json(fam.ff);
  j["rb"] = index_set_json(fam.rb);
  j["tf"] = index_set_json(fam.tf);
  return j;
}

// Column-format vector input: header optional, columns x,re[,im]; one row
// per grid node in grid order.
Eigen::VectorXcd read_vector_csv(const std::string& path,
                                 const RadialGrid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file: " + path);
  std::vector<std::array<double, 3>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      first = false;
      char* end = nullptr;
      std::strtod(cells[0].c_str(), &end);
      if (end == cells[0].c_str()) continue;  // header row
    }
    if (cells.size() < 2)
      throw ConfigError("input csv: need columns x,re[,im]");
    std::array<double, 3> row = {0, 0, 0};
    for (std::size_t c = 0; c < std::min<std::size_t>(3, cells.size()); ++c) {
      char* end = nullptr;
      row[c] = std::strtod(cells[c].c_str(), &end);
      if (end == cells[c].c_str())
        throw ConfigError("input csv: non-numeric cell '" + cells[c] + "'");
    }
    rows.push_back(row);
  }
  if (static_cast<int>(rows.size()) != grid.dof_count())
    throw ConfigError("input csv: expected one row per grid node (" +
                      std::to_string(grid.dof_count()) + ")");
  Eigen::VectorXcd f(grid.dof_count());
  for (int i = 0; i < grid.dof_count(); ++i) {
    if (std::abs(rows[i][0] - grid.dof_x(i)) >
        1e-9 * std::max(1.0, std::abs(grid.dof_x(i))))
      throw ConfigError("input csv: node coordinates do not match the grid");
    f[i] = std::complex<double>(rows[i][1], rows[i][2]);
  }
  return f;
}

Eigen::VectorXcd default_load(const ConeModel& model, const RadialGrid& grid) {
  const double c = 0.5 * model.x_max, w = 0.1 * model.x_max;
  return interpolate_complex(grid, [&](double x) {
    return std::complex<double>(
        std::exp(-((x - c) * (x - c)) / (2 * w * w)), 0.0);
  });
}

// ---------------------------------------------------------------------------

struct CliState {
  std::string config_path;
  std::string output;
  std::string input;
  double h = 0.0;
  bool h_set = false;
  int mode = 0;
  int count = 8;
  double cutoff = 1.5;
  double alpha = 0.0;
  bool alpha_set = false;
  double w_re = 0.0, w_im = 0.0;
  bool w_set = false;
  double omega_re = 0.0, omega_im = 0.0;
  bool omega_set = false;
  std::string route = "both";
  std::string shape = "horizontal";
  double epsilon = 1e-3;
  double tail_tol = 1e-8;
  int nodes_per_decade = 16;
  // norms
  std::string scale = "cone";
  double s = 1.0;
  double tau = 0.0;
  bool tau_set = false;
  std::string to_scale;
  double to_s = 0.0;
  bool to_s_set = false;
  double to_alpha = 0.0;
  bool to_alpha_set = false;
  double to_tau = 0.0;
  bool to_tau_set = false;
  // verify
  std::vector<std::string> names;
  bool list_only = false;
  int workers = 0;
};

RunConfig require_config(const CliState& st) {
  if (st.config_path.empty())
    throw ConfigError("--config is required for this subcommand");
  return load_run_config(st.config_path);
}

double pick_h(const CliState& st, const RunConfig& cfg) {
  if (st.h_set) {
    if (!(st.h > 0.0) || st.h > 1.0)
      throw ConfigError("--h must lie in (0, 1]");
    return st.h;
  }
  if (cfg.h_values.empty()) throw ConfigError("config: h_values is empty");
  return cfg.h_values.front();
}

int cmd_spectrum(const CliState& st) {
  RunConfig cfg = require_config(st);
  ConeModel model = model_from_config(cfg);
  const double alpha = st.alpha_set ? st.alpha : cfg.resolved_alpha();

  nlohmann::json j;
  j["boundary_spectrum"] = index_set_json(boundary_spectrum(model, st.cutoff));
  WeightWindow win = weight_window(model);
  j["weight_window"] = {win.lower, win.upper};
  j["alpha"] = alpha;
  nlohmann::json roots = nlohmann::json::array();
  const double s_half = (model.dim - 2) / 2.0;
  for (const auto& mode : model.modes) {
    IndicialRoot r = indicial_roots(model.dim, mode.lambda_sq, mode.index);
    const double rr = std::sqrt(s_half * s_half + mode.lambda_sq);
    nlohmann::json row;
    row["mode"] = r.mode_index;
    row["lambda_sq"] = r.lambda_sq;
    row["sigma_plus"] = {r.sigma_plus.real(), r.sigma_plus.imag()};
    row["sigma_minus"] = {r.sigma_minus.real(), r.sigma_minus.imag()};
    row["weight_line_near"] = rr - s_half;
    row["weight_line_far"] = -(rr + s_half);
    roots.push_back(row);
  }
  j["indicial_roots"] = roots;
  j["resolvent_family"] =
      family_json(resolvent_index_family(model, alpha, st.cutoff));
  if (st.w_set) {
    const std::complex<double> w(st.w_re, st.w_im);
    j["power_exponent"] = {st.w_re, st.w_im};
    j["power_family"] =
        family_json(power_index_family(model, alpha, w, st.cutoff));
  }
  const std::string path = out_path(cfg, st.output, "spectrum.json");
  write_file(path, j.dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_eig(const CliState& st) {
  RunConfig cfg = require_config(st);
  ConeModel model = model_from_config(cfg);
  RadialGrid grid = grid_from_config(cfg);
  const double h = pick_h(st, cfg);
  RadialOperator op = assemble_mode_operator(model, grid, st.mode, h);
  SpectralDecomposition low = lowest_eigenpairs(op, st.count);

  std::string values = "k,eigenvalue\n";
  for (int k = 0; k < low.size(); ++k)
    values += std::to_string(k) + "," + g17(low.eigenvalues[k]) + "\n";
  const std::string vpath = out_path(cfg, "", "eig_values.csv");
  write_file(vpath, values);

  std::string csv = "x";
  for (int k = 0; k < low.size(); ++k) csv += ",v" + std::to_string(k);
  csv += "\n";
  for (int i = 0; i < grid.dof_count(); ++i) {
    csv += g17(grid.dof_x(i));
    for (int k = 0; k < low.size(); ++k) csv += "," + g17(low.vectors(i, k));
    csv += "\n";
  }
  const std::string path = out_path(cfg, st.output, "eig.csv");
  write_file(path, csv);

  for (int k = 0; k < low.size(); ++k)
    std::cout << "eig[" << k << "] = " << g17(low.eigenvalues[k]) << "\n";
  std::cout << "wrote " << path << " and " << vpath << "\n";
  return 0;
}

int cmd_resolvent(const CliState& st) {
  RunConfig cfg = require_config(st);
  ConeModel model = model_from_config(cfg);
  RadialGrid grid = grid_from_config(cfg);
  const double h = pick_h(st, cfg);
  RadialOperator op = assemble_mode_operator(model, grid, st.mode, h);
  const std::complex<double> z = st.omega_set
                                     ? std::complex<double>(st.omega_re, st.omega_im)
                                     : cfg.omega;
  Eigen::VectorXcd f = st.input.empty() ? default_load(model, grid)
                                        : read_vector_csv(st.input, grid);
  Eigen::VectorXcd u = resolvent_apply(op, z, f);

  std::string csv = "x,re,im\n";
  for (int i = 0; i < grid.dof_count(); ++i)
    csv += g17(grid.dof_x(i)) + "," + g17(u[i].real()) + "," +
           g17(u[i].imag()) + "\n";
  const std::string path = out_path(cfg, st.output, "resolvent.csv");
  write_file(path, csv);
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_power(const CliState& st) {
  RunConfig cfg = require_config(st);
  if (!st.w_set) throw ConfigError("power: --w-re is required");
  ConeModel model = model_from_config(cfg);
  RadialGrid grid = grid_from_config(cfg);
  const double h = pick_h(st, cfg);
  RadialOperator op = assemble_mode_operator(model, grid, st.mode, h);
  const std::complex<double> w(st.w_re, st.w_im);
  Eigen::VectorXcd f = st.input.empty() ? default_load(model, grid)
                                        : read_vector_csv(st.input, grid);

  const bool want_contour = st.route == "both" || st.route == "contour";
  const bool want_spectral = st.route == "both" || st.route == "spectral";
  if (!want_contour && !want_spectral)
    throw ConfigError("power: --route must be both, contour, or spectral");

  std::optional<Eigen::VectorXcd> uc, us;
  double tail = 0.0;
  if (want_contour) {
    const ContourShape shape = st.shape == "radial" ? ContourShape::radial
                                                    : ContourShape::horizontal;
    if (st.shape != "radial" && st.shape != "horizontal")
      throw ConfigError("power: --shape must be horizontal or radial");
    if (w.real() < 0.0) {
      Contour contour = build_contour(
          st.epsilon, recommended_r_max(w, st.tail_tol), st.nodes_per_decade,
          shape);
      ContourApplyResult res = contour_power_apply(op, contour, w, f);
      uc = res.u;
      tail = res.tail_bound;
    } else {
      const int k = std::max(0, static_cast<int>(std::ceil(w.real())) + 1);
      const std::complex<double> shifted = w - static_cast<double>(k);
      Contour contour = build_contour(
          st.epsilon, recommended_r_max(shifted, st.tail_tol),
          st.nodes_per_decade, shape);
      ContourApplyResult res =
          analytic_continuation_power(op, contour, w, f, k);
      uc = res.u;
      tail = res.tail_bound;
    }
  }
  if (want_spectral) {
    SpectralDecomposition dec = eigendecompose(op);
    us = functional_power_apply(dec, 2.0 * w, f);  // A^w = (A^{1/2})^{2w}
  }

  std::string csv;
  if (uc && us) {
    csv = "x,re_contour,im_contour,re_spectral,im_spectral\n";
    for (int i = 0; i < grid.dof_count(); ++i)
      csv += g17(grid.dof_x(i)) + "," + g17((*uc)[i].real()) + "," +
             g17((*uc)[i].imag()) + "," + g17((*us)[i].real()) + "," +
             g17((*us)[i].imag()) + "\n";
    const double diff = m_norm(op.M, Eigen::VectorXcd(*uc - *us));
    const double ref = std::max(1e-300, m_norm(op.M, *us));
    std::cout << "relative route difference (metric norm): "
              << g17(diff / ref) << "\n";
  } else {
    const Eigen::VectorXcd& u = uc ? *uc : *us;
    csv = "x,re,im\n";
    for (int i = 0; i < grid.dof_count(); ++i)
      csv += g17(grid.dof_x(i)) + "," + g17(u[i].real()) + "," +
             g17(u[i].imag()) + "\n";
  }
  if (uc) std::cout << "contour tail bound: " << g17(tail) << "\n";
  const std::string path = out_path(cfg, st.output, "power.csv");
  write_file(path, csv);
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_norms(const CliState& st) {
  RunConfig cfg = require_config(st);
  ConeModel model = model_from_config(cfg);
  RadialGrid grid = grid_from_config(cfg);

  auto parse_scale = [](const std::string& s) {
    if (s == "cone") return NormScale::cone;
    if (s == "b") return NormScale::b;
    throw ConfigError("norms: scale must be cone or b");
  };
  NormSpec from;
  from.scale = parse_scale(st.scale);
  from.s = st.s;
  from.alpha = st.alpha_set ? st.alpha : cfg.resolved_alpha();
  from.tau = st.tau_set ? st.tau : cfg.tau;

  NormSpec to;
  to.scale = st.to_scale.empty()
                 ? (from.scale == NormScale::cone ? NormScale::b
                                                  : NormScale::cone)
                 : parse_scale(st.to_scale);
  to.s = st.to_s_set ? st.to_s : from.s;
  to.alpha = st.to_alpha_set ? st.to_alpha : from.alpha;
  to.tau = st.to_tau_set ? st.to_tau : from.tau;

  auto rows = inclusion_constant_sweep(model, grid, from, to, cfg.h_values,
                                       st.mode);
  std::string csv = "h,ratio,argmax_trial_id\n";
  for (const auto& r : rows)
    csv += g17(r.h) + "," + g17(r.ratio) + "," + r.argmax_trial + "\n";
  const std::string path = out_path(cfg, st.output, "norms.csv");
  write_file(path, csv);
  std::cout << "predicted h-power factored out: "
            << g17(predicted_inclusion_h_power(from, to)) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "domain-equivalence", "kernel-decay", "invertibility", "wavefront",
      "ellipticity"};
  return names;
}

int resolve_workers(int cli_workers, const RunConfig& cfg, int njobs) {
  int w = cli_workers;
  if (w <= 0) {
    if (const char* env = std::getenv("CONECALC_WORKERS")) {
      const int parsed = std::atoi(env);
      if (parsed > 0) w = parsed;
    }
  }
  if (w <= 0) w = cfg.workers;
  if (w <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    w = hw > 0 ? static_cast<int>(hw) : 1;
  }
  return std::max(1, std::min(w, njobs));
}

int cmd_verify(const CliState& st) {
  if (st.list_only) {
    for (const auto& n : experiment_names()) std::cout << n << "\n";
    return 0;
  }
  RunConfig cfg = require_config(st);
  ConeModel model = model_from_config(cfg);
  RadialGrid grid = grid_from_config(cfg);

  std::vector<std::string> selected =
      st.names.empty() ? experiment_names() : st.names;
  for (const auto& n : selected) {
    bool known = false;
    for (const auto& k : experiment_names()) known = known || k == n;
    if (!known) throw ConfigError("verify: unknown experiment '" + n + "'");
  }
  // Deduplicate, canonical order.
  std::vector<std::string> jobs_names;
  for (const auto& k : experiment_names())
    for (const auto& n : selected)
      if (n == k) {
        jobs_names.push_back(k);
        break;
      }

  std::vector<std::function<ExperimentReport()>> jobs;
  for (const auto& name : jobs_names) {
    if (name == "domain-equivalence")
      jobs.emplace_back([&] {
        return domain_equivalence_experiment(model, grid,
                                             domain_equivalence_options(cfg));
      });
    else if (name == "kernel-decay")
      jobs.emplace_back([&] {
        return kernel_decay_experiment(model, grid, kernel_decay_options(cfg));
      });
    else if (name == "invertibility")
      jobs.emplace_back([&] {
        return two_parameter_invertibility_sweep(model, grid,
                                                 invertibility_options(cfg));
      });
    else if (name == "wavefront")
      jobs.emplace_back([&] {
        return wavefront_preservation_experiment(model, wavefront_options(cfg));
      });
    else
      jobs.emplace_back([&] {
        return full_ellipticity_check(model, cfg.resolved_alpha(),
                                      ellipticity_options(cfg));
      });
  }

  std::vector<std::optional<ExperimentReport>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  const int nworkers =
      resolve_workers(st.workers, cfg, static_cast<int>(jobs.size()));
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        results[i] = jobs[i]();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nworkers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  // Slot-indexed merge keeps output order independent of scheduling.
  bool any_fail = false;
  nlohmann::json summary;
  summary["version"] = version_string;
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ExperimentReport rep;
    if (results[i]) {
      rep = *results[i];
    } else {
      rep.experiment = jobs_names[i];
      rep.verdict = Verdict::INCONCLUSIVE;
      rep.notes.push_back("execution error: " + errors[i]);
    }
    const std::string path = out_path(
        cfg, "", "verdict-" + jobs_names[i] + ".json");
    write_file(path, rep.to_json().dump(2) + "\n");
    std::cout << jobs_names[i] << ": " << verdict_name(rep.verdict) << "\n";
    per[jobs_names[i]] = verdict_name(rep.verdict);
    if (rep.verdict == Verdict::FAIL) any_fail = true;
  }
  summary["experiments"] = per;
  summary["overall"] = any_fail ? "FAIL" : "PASS";
  write_file(out_path(cfg, st.output, "verify-summary.json"),
             summary.dump(2) + "\n");
  return any_fail ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"semiclassical cone operator laboratory", "conecalc"};
  app.set_version_flag("--version", version_string);
  // --h names the semiclassical parameter, so keep help on --help only.
  app.set_help_flag("--help", "print help");
  CliState st;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--config", st.config_path, "JSON run configuration");
    sub->add_option("--output", st.output, "output file path");
  };

  CLI::App* sp = app.add_subcommand(
      "spectrum", "boundary spectrum, weight window, and index families");
  add_common(sp);
  sp->add_option("--cutoff", st.cutoff, "completeness cutoff for families");
  auto* sp_alpha = sp->add_option("--alpha", st.alpha, "weight exponent");
  auto* sp_wre = sp->add_option("--w-re", st.w_re, "power exponent, real part");
  sp->add_option("--w-im", st.w_im, "power exponent, imaginary part");

  CLI::App* eg = app.add_subcommand("eig", "lowest eigenpairs of one mode");
  add_common(eg);
  auto* eg_h = eg->add_option("--h", st.h, "semiclassical parameter");
  eg->add_option("--mode", st.mode, "mode index");
  eg->add_option("--count", st.count, "number of pairs");

  CLI::App* rs = app.add_subcommand("resolvent", "apply the resolvent");
  add_common(rs);
  auto* rs_h = rs->add_option("--h", st.h, "semiclassical parameter");
  rs->add_option("--mode", st.mode, "mode index");
  auto* rs_ore = rs->add_option("--omega-re", st.omega_re,
                                "spectral parameter, real part");
  rs->add_option("--omega-im", st.omega_im,
                 "spectral parameter, imaginary part");
  rs->add_option("--input", st.input, "load vector csv (x,re[,im])");

  CLI::App* pw = app.add_subcommand("power", "apply a complex power");
  add_common(pw);
  auto* pw_h = pw->add_option("--h", st.h, "semiclassical parameter");
  pw->add_option("--mode", st.mode, "mode index");
  auto* pw_wre = pw->add_option("--w-re", st.w_re, "exponent, real part");
  pw->add_option("--w-im", st.w_im, "exponent, imaginary part");
  pw->add_option("--route", st.route, "both | contour | spectral");
  pw->add_option("--shape", st.shape, "contour shape: horizontal | radial");
  pw->add_option("--epsilon", st.epsilon, "contour spectral clearance");
  pw->add_option("--tail-tol", st.tail_tol, "contour truncation tolerance");
  pw->add_option("--nodes-per-decade", st.nodes_per_decade,
                 "contour quadrature density");
  pw->add_option("--input", st.input, "input vector csv (x,re[,im])");

  CLI::App* nm = app.add_subcommand("norms", "inclusion constant sweep");
  add_common(nm);
  nm->add_option("--scale", st.scale, "source scale: cone | b");
  nm->add_option("--s", st.s, "differential order");
  auto* nm_alpha = nm->add_option("--alpha", st.alpha, "weight exponent");
  auto* nm_tau = nm->add_option("--tau", st.tau, "outer weight exponent");
  nm->add_option("--to-scale", st.to_scale, "target scale (default: other)");
  auto* nm_tos = nm->add_option("--to-s", st.to_s, "target order");
  auto* nm_toa = nm->add_option("--to-alpha", st.to_alpha, "target alpha");
  auto* nm_tot = nm->add_option("--to-tau", st.to_tau, "target tau");
  nm->add_option("--mode", st.mode, "mode index");

  CLI::App* vf = app.add_subcommand("verify", "run verification experiments");
  add_common(vf);
  vf->add_option("names", st.names, "experiment names (default: all)");
  vf->add_flag("--list", st.list_only, "list experiment names and exit");
  vf->add_option("--workers", st.workers, "worker thread count");

  app.require_subcommand(0, 1);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  st.h_set = eg_h->count() + rs_h->count() + pw_h->count() > 0;
  st.alpha_set = sp_alpha->count() + nm_alpha->count() > 0;
  st.w_set = sp_wre->count() + pw_wre->count() > 0;
  st.omega_set = rs_ore->count() > 0;
  st.tau_set = nm_tau->count() > 0;
  st.to_s_set = nm_tos->count() > 0;
  st.to_alpha_set = nm_toa->count() > 0;
  st.to_tau_set = nm_tot->count() > 0;

  try {
    if (sp->parsed()) return cmd_spectrum(st);
    if (eg->parsed()) return cmd_eig(st);
    if (rs->parsed()) return cmd_resolvent(st);
    if (pw->parsed()) return cmd_power(st);
    if (nm->parsed()) return cmd_norms(st);
    if (vf->parsed()) return cmd_verify(st);
    std::cout << app.help();
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NearSpectralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace conecalc
