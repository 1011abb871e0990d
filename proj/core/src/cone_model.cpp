#include "conecalc/cone_model.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace conecalc {

double Warp::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

double Warp::derivative(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;)
    acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

bool Warp::is_zero() const {
  for (double c : coeffs)
    if (c != 0.0) return false;
  return true;
}

namespace {

// Dimension of the space of degree-l spherical harmonics on S^{d-1}, d >= 2,
// computed with exact integer arithmetic:
//   N(l) = (2l + d - 2)/(d - 2) * C(l + d - 3, l)   for d >= 3,
//   N(0) = 1, N(l) = 2 for l >= 1 when d == 2.
long long harmonic_multiplicity(int sphere_ambient_dim, int l) {
  const int d = sphere_ambient_dim;
  if (l == 0) return 1;
  if (d == 2) return 2;
  // C(l + d - 3, d - 3), multiplied so that every partial product is integer.
  long long binom = 1;
  for (int i = 1; i <= d - 3; ++i)
    binom = binom * (l + i) / i;
  // (2l + d - 2) * binom is divisible by (d - 2): split carefully.
  long long num = (2LL * l + d - 2) * binom;
  if (num % (d - 2) != 0)
    throw std::logic_error("harmonic multiplicity not integral");
  return num / (d - 2);
}

}  // namespace

std::vector<AngularMode> sphere_spectrum(int dim, int l_max) {
  if (dim < 3) throw std::domain_error("sphere_spectrum: need dim >= 3");
  if (l_max < 0) throw std::domain_error("sphere_spectrum: need l_max >= 0");
  std::vector<AngularMode> modes;
  modes.reserve(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) {
    AngularMode m;
    m.index = l;
    m.lambda_sq = static_cast<double>(l) * (l + dim - 2);
    long long mult = harmonic_multiplicity(dim, l);
    if (mult > 1'000'000'000LL)
      throw std::domain_error("sphere_spectrum: multiplicity overflow");
    m.multiplicity = static_cast<int>(mult);
    modes.push_back(m);
  }
  return modes;
}

ConeModel make_sphere_model(int dim, double x_max, int l_max, Warp warp) {
  ConeModel model;
  model.dim = dim;
  model.x_max = x_max;
  model.modes = sphere_spectrum(dim, l_max);
  model.warp = std::move(warp);
  model.modes_complete = false;  // cut at l_max; higher harmonics exist
  return model;
}

std::vector<ModelDiagnostic> validate_model(const ConeModel& model) {
  std::vector<ModelDiagnostic> out;
  auto violation = [&out](const std::string& code, const std::string& msg) {
    out.push_back({ModelDiagnostic::Severity::violation, code, msg});
  };
  auto warning = [&out](const std::string& code, const std::string& msg) {
    out.push_back({ModelDiagnostic::Severity::warning, code, msg});
  };

  if (model.dim < 3)
    violation("dim", "cone dimension must be at least 3, got " +
                         std::to_string(model.dim));
  if (!(model.x_max > 0.0))
    violation("x_max", "truncation radius must be positive");
  if (model.modes.empty()) violation("modes", "mode list is empty");

  for (std::size_t j = 0; j < model.modes.size(); ++j) {
    const AngularMode& m = model.modes[j];
    if (m.lambda_sq < 0.0)
      violation("mode_sign", "mode " + std::to_string(j) +
                                 " has negative eigenvalue");
    if (m.multiplicity < 1)
      violation("mode_mult", "mode " + std::to_string(j) +
                                 " has multiplicity < 1");
    if (j > 0 && !(model.modes[j].lambda_sq > model.modes[j - 1].lambda_sq)) {
      if (model.modes[j].lambda_sq == model.modes[j - 1].lambda_sq)
        violation("mode_dup", "duplicate eigenvalue at positions " +
                                  std::to_string(j - 1) + "," +
                                  std::to_string(j) +
                                  "; merge multiplicities instead");
      else
        violation("mode_order", "mode eigenvalues not strictly increasing at "
                                "position " + std::to_string(j));
    }
  }

  if (!model.warp.coeffs.empty() && model.warp.coeffs[0] != 0.0)
    violation("warp_tip", "warp must vanish at the tip (constant term is " +
                              std::to_string(model.warp.coeffs[0]) + ")");

  if (!model.modes.empty() && model.modes[0].lambda_sq != 0.0)
    warning("no_zero_mode",
            "lowest listed eigenvalue is nonzero; constants on the "
            "cross-section are not represented");

  return out;
}

bool is_admissible(const std::vector<ModelDiagnostic>& diagnostics) {
  for (const auto& d : diagnostics)
    if (d.severity == ModelDiagnostic::Severity::violation) return false;
  return true;
}

std::vector<std::string> validate_parameters(const ConeModel& model,
                                             const ParameterGrid& params) {
  std::vector<std::string> problems;
  if (params.h_values.empty()) problems.push_back("h_values is empty");
  for (double h : params.h_values)
    if (!(h > 0.0) || h > 1.0)
      problems.push_back("h value " + std::to_string(h) +
                         " outside (0, 1]");
  for (double ht : params.htilde_values)
    if (!(ht > 0.0) || ht > 1.0)
      problems.push_back("htilde value " + std::to_string(ht) +
                         " outside (0, 1]");

  const double gap_low = -(model.dim - 2.0);
  if (!(params.alpha > gap_low) || !(params.alpha < 0.0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "alpha %.17g outside the invertibility window (%g, 0)",
                  params.alpha, gap_low);
    problems.emplace_back(buf);
  }
  return problems;
}

}  // namespace conecalc
