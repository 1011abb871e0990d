#include "conecalc/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>

#include "conecalc/tridiagonal.hpp"

namespace conecalc {

namespace {

// Symmetric diagonal scaling D = diag(B)^{-1/2}: graded meshes give the mass
// matrix condition numbers ~1e14, which the scaled pencil reduces to O(10).
struct ScaledPencil {
  Eigen::VectorXd d;
  SymTridiag A, B;
};

ScaledPencil scale_pencil(const SymTridiag& A, const SymTridiag& B) {
  const int n = A.size();
  ScaledPencil out;
  out.d.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!(B.diag[i] > 0.0))
      throw std::runtime_error("pencil scaling: B has nonpositive diagonal");
    out.d[i] = 1.0 / std::sqrt(B.diag[i]);
  }
  auto scale = [&](const SymTridiag& T) {
    SymTridiag S = T;
    for (int i = 0; i < n; ++i) S.diag[i] *= out.d[i] * out.d[i];
    for (int i = 0; i + 1 < n; ++i) S.off[i] *= out.d[i] * out.d[i + 1];
    return S;
  };
  out.A = scale(A);
  out.B = scale(B);
  return out;
}

}  // namespace

PencilEigen dense_pencil_eigen(const SymTridiag& A, const SymTridiag& B) {
  if (A.size() != B.size())
    throw std::invalid_argument("dense_pencil_eigen: size mismatch");
  ScaledPencil sp = scale_pencil(A, B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      sp.A.to_dense(), sp.B.to_dense(),
      Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_pencil_eigen: solver failed");
  PencilEigen out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  // Undo the scaling; B-orthonormality is preserved exactly.
  for (int i = 0; i < out.vectors.rows(); ++i)
    out.vectors.row(i) *= sp.d[i];
  return out;
}

PencilEigen lanczos_largest(const SymTridiag& Numer, const SymTridiag& Denom,
                            int count, double tol, int max_iter) {
  const int n = Numer.size();
  if (Denom.size() != n)
    throw std::invalid_argument("lanczos_largest: size mismatch");
  if (count < 1 || count > n)
    throw std::invalid_argument("lanczos_largest: bad count");
  const int m_max =
      std::min(n, max_iter > 0 ? max_iter : std::max(4 * count + 40, 80));

  TridiagLDLT denom_solver(Denom);

  // Deterministic start vector with no accidental symmetry.
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i)
    q[i] = 1.0 + 0.37 * std::sin(1.0 + 2.17 * i) + 0.11 * std::cos(0.53 * i);

  auto denom_ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(Denom.apply(b));
  };

  q /= std::sqrt(denom_ip(q, q));
  Eigen::MatrixXd Q(n, m_max);
  Q.col(0) = q;
  Eigen::VectorXd alpha(m_max), beta(m_max);
  int m = 0;
  double beta_last = 0.0;

  for (int j = 0; j < m_max; ++j) {
    Eigen::VectorXd w = denom_solver.solve(Numer.apply(Eigen::VectorXd(Q.col(j))));
    alpha[j] = denom_ip(w, Q.col(j));
    w -= alpha[j] * Q.col(j);
    if (j > 0) w -= beta[j - 1] * Q.col(j - 1);
    // Full reorthogonalization (twice) in the Denom inner product.
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd Dw = Denom.apply(w);
      Eigen::VectorXd proj = Q.leftCols(j + 1).transpose() * Dw;
      w -= Q.leftCols(j + 1) * proj;
    }
    double nb = std::sqrt(std::max(0.0, denom_ip(w, w)));
    m = j + 1;
    beta_last = nb;
    if (nb < 1e-14) break;  // invariant subspace found
    if (j + 1 < m_max) {
      beta[j] = nb;
      Q.col(j + 1) = w / nb;
    }
  }

  // Ritz pairs of the Lanczos tridiagonal.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("lanczos_largest: Ritz solve failed");

  if (m < count)
    throw std::runtime_error("lanczos_largest: space exhausted early");

  // Largest `count` Ritz values live at the top of the ascending list.
  PencilEigen out;
  out.values.resize(count);
  out.vectors.resize(n, count);
  for (int i = 0; i < count; ++i) {
    const int src = m - count + i;
    out.values[i] = es.eigenvalues()[src];
    out.vectors.col(i) = Q.leftCols(m) * es.eigenvectors().col(src);
    const double resid = std::abs(beta_last * es.eigenvectors()(m - 1, src));
    if (resid > tol * std::max(1.0, std::abs(out.values[i])) &&
        beta_last >= 1e-14) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "lanczos_largest: Ritz pair %d unconverged "
                    "(residual %.3e after %d steps)",
                    i, resid, m);
      throw std::runtime_error(buf);
    }
  }
  return out;
}

Eigen::VectorXcd real_times_complex(const Eigen::MatrixXd& A,
                                    const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(A.rows());
  out.real() = A * v.real();
  out.imag() = A * v.imag();
  return out;
}
Eigen::VectorXcd realT_times_complex(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(A.cols());
  out.real() = A.transpose() * v.real();
  out.imag() = A.transpose() * v.imag();
  return out;
}

Eigen::VectorXd SpectralDecomposition::coefficients(
    const Eigen::VectorXd& f) const {
  return vectors.transpose() * M.apply(f);
}
Eigen::VectorXcd SpectralDecomposition::coefficients(
    const Eigen::VectorXcd& f) const {
  return realT_times_complex(vectors, M.apply(f));
}

SpectralDecomposition eigendecompose(const RadialOperator& op) {
  PencilEigen pe = dense_pencil_eigen(op.S, op.M);
  SpectralDecomposition dec;
  dec.eigenvalues = pe.values;
  dec.vectors = pe.vectors;
  dec.M = op.M;
  dec.h = op.h;
  return dec;
}

PencilEigen eigendecompose_base(const RadialOperator& op) {
  return dense_pencil_eigen(op.K, op.M);
}

SpectralDecomposition at_semiclassical_parameter(const PencilEigen& base,
                                                 const SymTridiag& M,
                                                 double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("at_semiclassical_parameter: h > 0");
  SpectralDecomposition dec;
  dec.eigenvalues = (1.0 + h * h * base.values.array()).matrix();
  dec.vectors = base.vectors;
  dec.M = M;
  dec.h = h;
  return dec;
}

SpectralDecomposition lowest_eigenpairs(const RadialOperator& op, int count) {
  // Largest eigenvalues of (M, S) are the reciprocals of the smallest of
  // (S, M); the vectors come back S-orthonormal and are renormalized in M.
  PencilEigen inv =
      lanczos_largest(op.M, op.S, count, 1e-11, std::max(6 * count + 40, 120));
  SpectralDecomposition dec;
  dec.M = op.M;
  dec.h = op.h;
  dec.eigenvalues.resize(count);
  dec.vectors.resize(inv.vectors.rows(), count);
  for (int i = 0; i < count; ++i) {
    const int src = count - 1 - i;  // reciprocal flips the order
    dec.eigenvalues[i] = 1.0 / inv.values[src];
    Eigen::VectorXd v = inv.vectors.col(src);
    dec.vectors.col(i) = v / m_norm(op.M, v);
  }
  return dec;
}

double m_norm(const SymTridiag& M, const Eigen::VectorXd& u) {
  return std::sqrt(std::max(0.0, u.dot(M.apply(u))));
}
double m_norm(const SymTridiag& M, const Eigen::VectorXcd& u) {
  return std::sqrt(std::max(0.0, u.dot(M.apply(u)).real()));
}

Eigen::VectorXcd resolvent_apply(const RadialOperator& op,
                                 std::complex<double> z,
                                 const Eigen::VectorXcd& f) {
  // Spectrum of the continuum operator lives in [1, infinity); refuse points
  // that are numerically on it before attempting a factorization.
  const double dist = (z.real() >= 1.0)
                          ? std::abs(z.imag())
                          : std::abs(z - std::complex<double>(1.0, 0.0));
  if (dist <= 1e-13 * (1.0 + std::abs(z)))
    throw NearSpectralError("resolvent_apply: z on the essential range [1,inf)",
                            z.real());

  TridiagLU lu(op.S, op.M, z);
  Eigen::VectorXcd rhs = op.M.apply(f);
  Eigen::VectorXcd u = lu.solve(rhs);

  auto residual = [&](const Eigen::VectorXcd& v) {
    return (op.S.apply(v) - z * op.M.apply(v) - rhs).eval();
  };
  const double scale =
      rhs.norm() + (1.0 + std::abs(z)) * op.M.apply(u).norm();
  Eigen::VectorXcd r = residual(u);
  if (r.norm() > 1e-11 * scale) {
    u -= lu.solve(r);  // one step of iterative refinement
    r = residual(u);
    if (r.norm() > 1e-9 * scale) {
      // Likely a near-eigenvalue: locate it by inverse iteration with the
      // factorization we already have.
      Eigen::VectorXcd v = Eigen::VectorXcd::Ones(u.size());
      for (int it = 0; it < 10; ++it) {
        v = lu.solve(op.M.apply(v));
        v /= v.norm();
      }
      const std::complex<double> num = v.dot(op.S.apply(v));
      const std::complex<double> den = v.dot(op.M.apply(v));
      const double nearest = (num / den).real();
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "resolvent_apply: z=(%.9g,%.9g) too close to eigenvalue "
                    "%.12g (residual %.3e)",
                    z.real(), z.imag(), nearest, r.norm() / scale);
      throw NearSpectralError(buf, nearest);
    }
  }
  return u;
}

Eigen::VectorXd apply_operator(const RadialOperator& op,
                               const Eigen::VectorXd& f) {
  TridiagLDLT m(op.M);
  return m.solve(op.S.apply(f));
}
Eigen::VectorXcd apply_operator(const RadialOperator& op,
                                const Eigen::VectorXcd& f) {
  TridiagLDLT m(op.M);
  return m.solve(op.S.apply(f));
}

Eigen::VectorXcd functional_power_apply(const SpectralDecomposition& dec,
                                        std::complex<double> w,
                                        const Eigen::VectorXcd& f) {
  Eigen::VectorXcd c = dec.coefficients(f);
  for (int k = 0; k < dec.size(); ++k) {
    const double nu = dec.eigenvalues[k];
    if (!(nu > 0.0))
      throw std::domain_error("functional_power_apply: nonpositive eigenvalue");
    c[k] *= std::exp(0.5 * w * std::log(nu));
  }
  return real_times_complex(dec.vectors, c);
}

}  // namespace conecalc
