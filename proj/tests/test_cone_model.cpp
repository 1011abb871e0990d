#include "conecalc/cone_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace conecalc;

namespace {

// Independent oracle for the cross-section eigenvalues: the zonal (axially
// symmetric) sector of the Laplacian on the round (d-1)-sphere reduces to
//   -(sin^{d-2}(t) u')' = lambda sin^{d-2}(t) u   on (0, pi),
// one eigenvalue per degree l.  Solve it with a small P1 finite element
// discretization assembled right here (4-point Gauss per cell), sharing no
// code with the library.
std::vector<double> zonal_sphere_eigenvalues(int ambient_dim, int count,
                                             int cells) {
  const double pi = 3.14159265358979312;
  const int n = cells + 1;  // nodes, natural boundary conditions
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const double gp[4] = {-0.8611363115940526, -0.3399810435848563,
                        0.3399810435848563, 0.8611363115940526};
  const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                        0.6521451548625461, 0.3478548451374538};
  const double dt = pi / cells;
  for (int c = 0; c < cells; ++c) {
    const double a = c * dt;
    for (int q = 0; q < 4; ++q) {
      const double t = a + 0.5 * dt * (1.0 + gp[q]);
      const double w = gw[q] * 0.5 * dt *
                       std::pow(std::sin(t), ambient_dim - 2);
      const double phiL = 1.0 - (t - a) / dt, phiR = (t - a) / dt;
      M(c, c) += w * phiL * phiL;
      M(c, c + 1) += w * phiL * phiR;
      M(c + 1, c) += w * phiL * phiR;
      M(c + 1, c + 1) += w * phiR * phiR;
      K(c, c) += w / (dt * dt);
      K(c, c + 1) -= w / (dt * dt);
      K(c + 1, c) -= w / (dt * dt);
      K(c + 1, c + 1) += w / (dt * dt);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + count);
  return out;
}

// Dimension of the space of degree-l spherical harmonics in ambient R^d,
// derived independently as dim P_l - dim P_{l-2} (homogeneous polynomials
// minus the image of multiplication by |x|^2).
long long harmonic_dim_oracle(int d, int l) {
  auto homog = [d](int deg) -> long long {
    if (deg < 0) return 0;
    // C(deg + d - 1, d - 1)
    long long r = 1;
    for (int i = 1; i <= d - 1; ++i) r = r * (deg + i) / i;
    return r;
  };
  return homog(l) - homog(l - 2);
}

bool has_code(const std::vector<ModelDiagnostic>& d, const std::string& code,
              ModelDiagnostic::Severity sev) {
  return std::any_of(d.begin(), d.end(), [&](const ModelDiagnostic& m) {
    return m.code == code && m.severity == sev;
  });
}

}  // namespace

TEST_CASE("sphere eigenvalues match an independent zonal FEM solve") {
  for (int dim : {3, 4}) {
    const auto oracle = zonal_sphere_eigenvalues(dim, 5, 400);
    const auto modes = sphere_spectrum(dim, 4);
    for (int l = 0; l <= 4; ++l) {
      const double expected = modes[l].lambda_sq;  // l (l + dim - 2)
      if (l == 0) {
        CHECK(std::abs(oracle[0]) < 1e-8);
        CHECK(expected == 0.0);
      } else {
        CHECK(oracle[l] == doctest::Approx(expected).epsilon(2e-3));
      }
    }
  }
}

TEST_CASE("sphere multiplicities match the polynomial dimension count") {
  for (int dim : {3, 4, 5, 6}) {
    const auto modes = sphere_spectrum(dim, 8);
    for (int l = 0; l <= 8; ++l)
      CHECK(modes[l].multiplicity == harmonic_dim_oracle(dim, l));
  }
  // Spot values: 2l+1 on the 2-sphere, (l+1)^2 on the 3-sphere.
  const auto s2 = sphere_spectrum(3, 3);
  CHECK(s2[3].multiplicity == 7);
  const auto s3 = sphere_spectrum(4, 3);
  CHECK(s3[3].multiplicity == 16);
}

TEST_CASE("sphere models are marked as truncated spectra") {
  ConeModel m = make_sphere_model(3, 2.0, 5);
  CHECK(m.dim == 3);
  CHECK(m.x_max == 2.0);
  CHECK(m.modes.size() == 6);
  CHECK_FALSE(m.modes_complete);
  for (int l = 0; l <= 5; ++l) {
    CHECK(m.modes[l].index == l);
    CHECK(m.modes[l].lambda_sq == doctest::Approx(l * (l + 1.0)));
  }
  CHECK(is_admissible(validate_model(m)));
}

TEST_CASE("warp evaluates its polynomial and derivative") {
  Warp w{{0.0, 0.5, -0.25}};  // 0.5 x - 0.25 x^2
  CHECK(w(0.0) == 0.0);
  CHECK(w(2.0) == doctest::Approx(0.5 * 2.0 - 0.25 * 4.0));
  CHECK(w.derivative(2.0) == doctest::Approx(0.5 - 0.5 * 2.0));
  CHECK_FALSE(w.is_zero());
  CHECK(Warp{}.is_zero());
  CHECK(Warp{{0.0, 0.0}}.is_zero());
}

TEST_CASE("validate_model reports structural violations by code") {
  ConeModel good = make_sphere_model(3, 1.0, 2);

  ConeModel m = good;
  m.dim = 2;
  CHECK(has_code(validate_model(m), "dim",
                 ModelDiagnostic::Severity::violation));

  m = good;
  m.x_max = 0.0;
  CHECK(has_code(validate_model(m), "x_max",
                 ModelDiagnostic::Severity::violation));

  m = good;
  m.modes.clear();
  CHECK(has_code(validate_model(m), "modes",
                 ModelDiagnostic::Severity::violation));

  m = good;
  m.modes[1].lambda_sq = -1.0;
  auto d = validate_model(m);
  CHECK(has_code(d, "mode_sign", ModelDiagnostic::Severity::violation));
  CHECK_FALSE(is_admissible(d));

  m = good;
  m.modes[1].multiplicity = 0;
  CHECK(has_code(validate_model(m), "mode_mult",
                 ModelDiagnostic::Severity::violation));

  m = good;
  m.modes[1].lambda_sq = m.modes[0].lambda_sq;
  CHECK(has_code(validate_model(m), "mode_dup",
                 ModelDiagnostic::Severity::violation));

  m = good;
  std::swap(m.modes[0].lambda_sq, m.modes[2].lambda_sq);
  CHECK(has_code(validate_model(m), "mode_order",
                 ModelDiagnostic::Severity::violation));

  m = good;
  m.warp.coeffs = {0.1, 1.0};
  CHECK(has_code(validate_model(m), "warp_tip",
                 ModelDiagnostic::Severity::violation));
}

TEST_CASE("a list without the zero mode is legal but flagged") {
  ConeModel m = make_sphere_model(3, 1.0, 3);
  m.modes.erase(m.modes.begin());
  auto d = validate_model(m);
  CHECK(has_code(d, "no_zero_mode", ModelDiagnostic::Severity::warning));
  CHECK(is_admissible(d));  // warnings do not block use
}

TEST_CASE("parameter validation enforces ranges and the weight window") {
  ConeModel m = make_sphere_model(4, 1.0, 2);
  ParameterGrid p;
  p.h_values = {0.5, 0.25};
  p.alpha = -1.0;  // inside (-(n-2), 0) = (-2, 0)
  CHECK(validate_parameters(m, p).empty());

  p.h_values = {};
  CHECK_FALSE(validate_parameters(m, p).empty());

  p.h_values = {1.5};
  CHECK_FALSE(validate_parameters(m, p).empty());

  p.h_values = {0.5};
  p.alpha = 0.0;  // on the window edge: rejected
  CHECK_FALSE(validate_parameters(m, p).empty());
  p.alpha = -2.0;
  CHECK_FALSE(validate_parameters(m, p).empty());
  p.alpha = -1.9;
  CHECK(validate_parameters(m, p).empty());
}

TEST_CASE("degenerate sphere requests are rejected") {
  CHECK_THROWS_AS(sphere_spectrum(2, 3), std::domain_error);
  CHECK_THROWS_AS(sphere_spectrum(3, -1), std::domain_error);
}
