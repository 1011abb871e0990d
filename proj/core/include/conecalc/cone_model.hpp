#pragma once

// Geometry data for a truncated cone [0, x_max] x Y with metric
//   g = dx^2 + x^2 e^{2 phi(x)} k_Y.
// Everything downstream decouples into angular modes of the cross-section
// Laplacian on (Y, k_Y), so a model carries the discrete eigenvalue list
// (with multiplicities) instead of the cross-section itself.

#include <string>
#include <vector>

namespace conecalc {

struct AngularMode {
  int index = 0;           // position in the sorted mode list
  double lambda_sq = 0.0;  // cross-section Laplacian eigenvalue
  int multiplicity = 1;
};

// Conformal warp phi(x) = sum_k coeffs[k] x^k of the cross-section family.
// Admissible warps vanish at the tip (coeffs[0] == 0), so the metric is an
// exact cone to leading order there.
struct Warp {
  std::vector<double> coeffs;

  double operator()(double x) const;
  double derivative(double x) const;
  bool is_zero() const;
};

struct ConeModel {
  int dim = 3;         // total dimension n of the cone (cross-section is n-1)
  double x_max = 1.0;  // truncation radius
  std::vector<AngularMode> modes;
  Warp warp;
  // Whether `modes` is the entire cross-section spectrum (an abstract model)
  // or a finite truncation of an infinite one (e.g. a sphere cut at l_max).
  // Truncated lists limit how far boundary expansions can be certified.
  bool modes_complete = true;
};

// Parameters attached to a family of operators h^2 Laplace + 1 on the model.
struct ParameterGrid {
  std::vector<double> h_values;       // in (0, 1], typically decreasing
  std::vector<double> htilde_values;  // optional second small parameter
  double alpha = -0.5;                // boundary weight
  double tau = 0.0;                   // transition-face weight
};

struct ModelDiagnostic {
  enum class Severity { violation, warning };
  Severity severity = Severity::violation;
  std::string code;
  std::string message;
};

// Eigenvalue l(l+n-2) of the round unit (n-1)-sphere with the dimension of
// the degree-l harmonic space as multiplicity.
std::vector<AngularMode> sphere_spectrum(int dim, int l_max);

ConeModel make_sphere_model(int dim, double x_max, int l_max, Warp warp = {});

// Structural checks. Violations make the model unusable; warnings flag
// legal-but-unusual data (e.g. no zero mode in the list).
std::vector<ModelDiagnostic> validate_model(const ConeModel& model);
bool is_admissible(const std::vector<ModelDiagnostic>& diagnostics);
std::vector<std::string> validate_parameters(const ConeModel& model,
                                             const ParameterGrid& params);

}  // namespace conecalc
