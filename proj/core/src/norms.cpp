#include "conecalc/norms.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "conecalc/tridiagonal.hpp"
#include "conecalc/trial_functions.hpp"

namespace conecalc {

double cone_weight(double alpha, double tau, double h, double x) {
  return std::pow(x / (x + h), -alpha) * std::pow(x + h, -tau);
}

namespace {

// Banded (tridiagonal, nonsymmetric) matrix for the projected first-order
// radial derivative: L_ij = ∫ hat_i rho hat_j' m_b dx.
struct Band3 {
  Eigen::VectorXd lower, diag, upper;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const {
    const Eigen::Index n = diag.size();
    Eigen::VectorXcd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::complex<double> acc = diag[i] * x[i];
      if (i > 0) acc += lower[i - 1] * x[i - 1];
      if (i + 1 < n) acc += upper[i] * x[i + 1];
      y[i] = acc;
    }
    return y;
  }
  Eigen::MatrixXd to_dense() const {
    const Eigen::Index n = diag.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(i, i) = diag[i];
      if (i > 0) A(i, i - 1) = lower[i - 1];
      if (i + 1 < n) A(i, i + 1) = upper[i];
    }
    return A;
  }
};

constexpr int kQuadN = 6;
constexpr double kQuadX[kQuadN] = {
    -0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
    0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr double kQuadW[kQuadN] = {
    0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
    0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

Band3 projected_derivative_load(const RadialGrid& grid,
                                const std::function<double(double)>& rho_mb) {
  const int n = grid.dof_count();
  Band3 L;
  L.diag = Eigen::VectorXd::Zero(n);
  L.lower = Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0);
  L.upper = Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0);
  for (int c = 0; c < grid.cell_count(); ++c) {
    const double a = grid.cell_left(c);
    const double b = grid.cell_right(c);
    const double hc = b - a;
    const double mid = 0.5 * (a + b), half = 0.5 * hc;
    // hat_c' = -1/hc, hat_{c+1}' = +1/hc on this cell.
    double v0 = 0.0, v1 = 0.0;  // ∫ hat_i rho m_b against the two hats
    for (int q = 0; q < kQuadN; ++q) {
      const double x = mid + half * kQuadX[q];
      const double wq = half * kQuadW[q] * rho_mb(x);
      v0 += wq * (b - x) / hc;
      v1 += wq * (x - a) / hc;
    }
    // column basis function j = c (slope -1/hc) and j = c+1 (slope +1/hc)
    L.diag[c] += v0 * (-1.0 / hc);
    if (c + 1 < n) {
      L.upper[c] += v0 * (1.0 / hc);
      L.lower[c] += v1 * (-1.0 / hc);
      L.diag[c + 1] += v1 * (1.0 / hc);
    }
  }
  return L;
}

}  // namespace

struct ModeNormEvaluatorPieces {
  RadialGrid grid;
  SymTridiag G0, R1, A1, G1;
  SymTridiag B;  // plain b pairing (tip entry regularized by the quadrature)
  std::optional<TridiagLDLT> B_solver;
  std::optional<TridiagLDLT> G1_solver;
  // second order
  bool second_built = false;
  Band3 L;
  SymTridiag Mix, A2;
  // fractional machinery (lazy)
  std::optional<PencilEigen> frac01;  // pencil (G1, G0)
  std::optional<PencilEigen> frac12;  // pencil (G2 dense, G1)
};

// Alias kept local to this translation unit.
struct ModeNormEvaluator::Pieces : ModeNormEvaluatorPieces {};

namespace {

std::shared_ptr<ModeNormEvaluator::Pieces> build_pieces(
    int dim, const Warp& warp, const RadialGrid& grid, double lambda_sq,
    NormScale scale, double s_order, double alpha, double tau, double h) {
  auto p = std::make_shared<ModeNormEvaluator::Pieces>();
  p->grid = grid;

  auto mb = [dim, warp](double x) {
    return std::exp((dim - 1) * warp(x)) / x;
  };
  std::function<double(double)> W;
  std::function<double(double)> rho;   // multiplier of d/dx
  std::function<double(double)> a_sq;  // squared angular factor
  if (scale == NormScale::cone) {
    W = [alpha, tau, h](double x) { return cone_weight(alpha, tau, h, x); };
    rho = [h](double x) { return h * x / (x + h); };
    a_sq = [h, lambda_sq](double x) {
      return h * h * lambda_sq / ((x + h) * (x + h));
    };
  } else {
    W = [alpha](double x) { return std::pow(x, -alpha); };
    rho = [h](double x) { return h * x; };
    a_sq = [h, lambda_sq](double) { return h * h * lambda_sq; };
  }

  auto W2mb = [W, mb](double x) {
    const double w = W(x);
    return w * w * mb(x);
  };
  p->G0 = weighted_value_gram(grid, W2mb);
  p->R1 = weighted_gradient_gram(grid, [W2mb, rho](double x) {
    const double r = rho(x);
    return W2mb(x) * r * r;
  });
  p->A1 = weighted_value_gram(
      grid, [W2mb, a_sq](double x) { return W2mb(x) * a_sq(x); });
  p->G1 = add_scaled(1.0, p->G0, 1.0, add_scaled(1.0, p->R1, 1.0, p->A1));
  p->B = weighted_value_gram(grid, mb);

  const bool needs_second = s_order > 1.0 + 1e-12;
  if (needs_second) {
    p->L = projected_derivative_load(
        grid, [rho, mb](double x) { return rho(x) * mb(x); });
    p->Mix = weighted_gradient_gram(grid, [W2mb, rho, a_sq](double x) {
      const double r = rho(x);
      return W2mb(x) * r * r * a_sq(x);
    });
    p->A2 = weighted_value_gram(grid, [W2mb, a_sq](double x) {
      const double a2 = a_sq(x);
      return W2mb(x) * a2 * a2;
    });
    p->second_built = true;
  }
  return p;
}

double hermitian_form(const SymTridiag& T, const Eigen::VectorXcd& u) {
  return u.dot(T.apply(u)).real();
}

}  // namespace

ModeNormEvaluator::ModeNormEvaluator(int dim, const Warp& warp,
                                     const RadialGrid& grid, double lambda_sq,
                                     const NormSpec& spec, double h)
    : spec_(spec), h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("ModeNormEvaluator: h > 0");
  if (spec.s < -1.0 - 1e-12 || spec.s > 2.0 + 1e-12)
    throw std::domain_error("ModeNormEvaluator: order s outside [-1, 2]");
  if (lambda_sq < 0.0)
    throw std::domain_error("ModeNormEvaluator: negative lambda_sq");

  const double tau_eff = spec.scale == NormScale::cone ? spec.tau : 0.0;
  primal_ = build_pieces(dim, warp, grid, lambda_sq, spec.scale,
                         std::max(spec.s, 0.0), spec.alpha, tau_eff, h);
  if (spec.s < -1e-12)
    dual_ = build_pieces(dim, warp, grid, lambda_sq, spec.scale, -spec.s,
                         -spec.alpha, -tau_eff, h);
}

double ModeNormEvaluator::norm_sq(const Eigen::VectorXcd& u) const {
  const double s = spec_.s;
  auto is_int = [](double v, double target) {
    return std::abs(v - target) < 1e-12;
  };
  Pieces& P = *primal_;

  if (is_int(s, 0.0)) return hermitian_form(P.G0, u);
  if (is_int(s, 1.0)) return hermitian_form(P.G1, u);
  if (is_int(s, 2.0)) {
    double total = hermitian_form(P.G1, u) + hermitian_form(P.Mix, u) +
                   hermitian_form(P.A2, u);
    // Radial word of length two: project D_r u back onto the mesh in the b
    // pairing, then take the weighted first-order seminorm of the result.
    if (!P.B_solver) P.B_solver.emplace(P.B);
    Eigen::VectorXcd g = P.B_solver->solve(P.L.apply(u));
    total += hermitian_form(P.R1, g);
    return total;
  }
  if (s > 0.0 && s < 1.0) {
    if (!P.frac01) P.frac01 = dense_pencil_eigen(P.G1, P.G0);
    Eigen::VectorXcd c = realT_times_complex(P.frac01->vectors, P.G0.apply(u));
    double total = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      total += std::pow(P.frac01->values[i], s) * std::norm(c[i]);
    return total;
  }
  if (s > 1.0 && s < 2.0) {
    if (!P.frac12) {
      // Dense s=2 Gram: tridiagonal words plus the projected radial square.
      Eigen::MatrixXd G2 = P.G1.to_dense() + P.Mix.to_dense() +
                           P.A2.to_dense();
      TridiagLDLT bsolve(P.B);
      Eigen::MatrixXd Ld = P.L.to_dense();
      Eigen::MatrixXd X(Ld.rows(), Ld.cols());
      for (Eigen::Index j = 0; j < Ld.cols(); ++j)
        X.col(j) = bsolve.solve(Eigen::VectorXd(Ld.col(j)));
      G2 += X.transpose() * P.R1.to_dense() * X;
      // Pencil (G2, G1) via the dense symmetric-definite solver.
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
          G2, P.G1.to_dense(),
          Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
      if (es.info() != Eigen::Success)
        throw std::runtime_error("fractional norm: pencil solve failed");
      PencilEigen pe;
      pe.values = es.eigenvalues();
      pe.vectors = es.eigenvectors();
      P.frac12 = std::move(pe);
    }
    Eigen::VectorXcd c = realT_times_complex(P.frac12->vectors, P.G1.apply(u));
    double total = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      total += std::pow(P.frac12->values[i], s - 1.0) * std::norm(c[i]);
    return total;
  }

  // Negative orders: dual of |s| at the opposite weights through the b
  // pairing.
  Pieces& D = *dual_;
  Eigen::VectorXcd y = P.B.apply(u);
  const double theta = -s;
  if (is_int(theta, 1.0)) {
    if (!D.G1_solver) D.G1_solver.emplace(D.G1);
    return y.dot(D.G1_solver->solve(y)).real();
  }
  if (!D.frac01) D.frac01 = dense_pencil_eigen(D.G1, D.G0);
  Eigen::VectorXcd c = realT_times_complex(D.frac01->vectors, y);
  double total = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    total += std::pow(D.frac01->values[i], -theta) * std::norm(c[i]);
  return total;
}

double ModeNormEvaluator::norm(const Eigen::VectorXcd& u) const {
  if (u.size() != primal_->G0.size())
    throw std::invalid_argument("ModeNormEvaluator::norm: size mismatch");
  return std::sqrt(std::max(0.0, norm_sq(u)));
}

double ModeNormEvaluator::norm(const Eigen::VectorXd& u) const {
  return norm(Eigen::VectorXcd(u.cast<std::complex<double>>()));
}

ModeNormEvaluator restriction_weights(const ConeModel& model,
                                      const RadialGrid& grid, int mode_index,
                                      const NormSpec& spec, double h) {
  if (mode_index < 0 ||
      mode_index >= static_cast<int>(model.modes.size()))
    throw std::invalid_argument("restriction_weights: bad mode index");
  return ModeNormEvaluator(
      model.dim, model.warp, grid,
      model.modes[static_cast<std::size_t>(mode_index)].lambda_sq, spec, h);
}

double cone_sobolev_norm(const ConeModel& model, const RadialGrid& grid,
                         const NormSpec& spec, double h,
                         const std::vector<Eigen::VectorXcd>& per_mode) {
  if (per_mode.size() != model.modes.size())
    throw std::invalid_argument(
        "cone_sobolev_norm: need one vector per listed mode");
  double total = 0.0;
  for (std::size_t j = 0; j < model.modes.size(); ++j) {
    ModeNormEvaluator ev(model.dim, model.warp, grid,
                         model.modes[j].lambda_sq, spec, h);
    const double nj = ev.norm(per_mode[j]);
    total += model.modes[j].multiplicity * nj * nj;
  }
  return std::sqrt(total);
}

double domain_norm(const SpectralDecomposition& dec, std::complex<double> w,
                   const Eigen::VectorXcd& u) {
  return m_norm(dec.M, functional_power_apply(dec, w, u));
}

double predicted_inclusion_h_power(const NormSpec& from, const NormSpec& to) {
  if (from.scale == to.scale) return 0.0;
  if (from.scale == NormScale::cone) {
    // cone (s, alpha, tau) into b (s, alpha)
    const double d = from.tau - from.alpha;
    return std::min(d, 0.0) - std::min(from.s, 0.0);
  }
  // b (s, alpha) into cone (s, alpha, tau)
  const double d = to.tau - to.alpha;
  return std::max(d, 0.0) - std::max(to.s, 0.0);
}

std::vector<InclusionRow> inclusion_constant_sweep(
    const ConeModel& model, const RadialGrid& grid, const NormSpec& from,
    const NormSpec& to, const std::vector<double>& h_values, int mode_index) {
  if (h_values.empty())
    throw std::invalid_argument("inclusion sweep: empty h list");
  if (mode_index < 0 || mode_index >= static_cast<int>(model.modes.size()))
    throw std::invalid_argument("inclusion sweep: bad mode index");
  const double lambda_sq =
      model.modes[static_cast<std::size_t>(mode_index)].lambda_sq;
  RadialOperator op = assemble_mode_operator(model, grid, mode_index, 1.0);
  PencilEigen base = eigendecompose_base(op);
  const double p = predicted_inclusion_h_power(from, to);

  std::vector<InclusionRow> rows;
  for (double h : h_values) {
    SpectralDecomposition dec = at_semiclassical_parameter(base, op.M, h);
    auto trials = build_trial_set(model, grid, mode_index, h, &dec);
    if (trials.empty())
      throw std::invalid_argument("inclusion sweep: empty trial set");
    ModeNormEvaluator from_ev(model.dim, model.warp, grid, lambda_sq, from, h);
    ModeNormEvaluator to_ev(model.dim, model.warp, grid, lambda_sq, to, h);
    InclusionRow row;
    row.h = h;
    for (const auto& t : trials) {
      const double nf = from_ev.norm(t.values);
      const double nt = to_ev.norm(t.values);
      if (!(nf > 0.0) || !std::isfinite(nt)) continue;
      const double r = nt / nf;
      if (r > row.raw_ratio) {
        row.raw_ratio = r;
        row.argmax_trial = t.id;
      }
    }
    row.ratio = row.raw_ratio * std::pow(h, -p);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace conecalc
