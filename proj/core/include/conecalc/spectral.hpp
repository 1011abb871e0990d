#pragma once

// Eigensolvers and resolvent/functional-calculus kernels for the assembled
// pencils.  Everything is phrased in terms of two symmetric tridiagonal
// matrices (A, B) with B positive definite: generalized eigenvalues are
// computed either densely (full decomposition, with symmetric diagonal
// scaling to tame the mass-matrix conditioning of graded meshes) or by
// shift-free Lanczos in the B inner product for a few extreme pairs.

#include <complex>
#include <stdexcept>

#include "conecalc/assembly.hpp"

namespace conecalc {

struct PencilEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, B-orthonormal
};

// Full dense decomposition of A v = theta B v.
PencilEigen dense_pencil_eigen(const SymTridiag& A, const SymTridiag& B);

// Largest `count` eigenvalues of Numer v = theta Denom v (Denom SPD), by
// Lanczos on Denom^{-1} Numer in the Denom inner product with full
// reorthogonalization.  Returned ascending, vectors Denom-orthonormal.
PencilEigen lanczos_largest(const SymTridiag& Numer, const SymTridiag& Denom,
                            int count, double tol = 1e-11,
                            int max_iter = 0);

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // nu_k of (S, M), ascending; nu = 1 + h^2 mu
  Eigen::MatrixXd vectors;      // M-orthonormal columns
  SymTridiag M;
  double h = 1.0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  Eigen::VectorXd coefficients(const Eigen::VectorXd& f) const;
  Eigen::VectorXcd coefficients(const Eigen::VectorXcd& f) const;
};

// Full decomposition of (S, M) for the operator h^2 K + M.
SpectralDecomposition eigendecompose(const RadialOperator& op);

// Decomposition of the h-independent pencil (K, M); eigenvalues mu >= 0.
PencilEigen eigendecompose_base(const RadialOperator& op);

// Rescale a (K, M) decomposition to the operator at parameter h:
// eigenvalues become 1 + h^2 mu, vectors are shared.
SpectralDecomposition at_semiclassical_parameter(const PencilEigen& base,
                                                 const SymTridiag& M,
                                                 double h);

// Lowest `count` eigenpairs of (S, M) without the dense solve.
SpectralDecomposition lowest_eigenpairs(const RadialOperator& op, int count);

class NearSpectralError : public std::runtime_error {
 public:
  NearSpectralError(const std::string& what, double nearest)
      : std::runtime_error(what), nearest_eigenvalue(nearest) {}
  double nearest_eigenvalue = 0.0;
};

// u solving (S - z M) u = M f, i.e. the Galerkin resolvent applied to the
// load of f.  Guards against z on or numerically near the spectrum; the
// solution is validated by residual and refined once before giving up.
Eigen::VectorXcd resolvent_apply(const RadialOperator& op,
                                 std::complex<double> z,
                                 const Eigen::VectorXcd& f);

// Galerkin action u -> M^{-1} S u of the operator itself.
Eigen::VectorXd apply_operator(const RadialOperator& op,
                               const Eigen::VectorXd& f);
Eigen::VectorXcd apply_operator(const RadialOperator& op,
                                const Eigen::VectorXcd& f);

// Functional calculus applying the HALF power: diag(nu^{w/2}) in the
// eigenbasis, so w = 2 reproduces one application of the operator and
// w = -2 the resolvent at z = 0.  Compose/compare accordingly.
Eigen::VectorXcd functional_power_apply(const SpectralDecomposition& dec,
                                        std::complex<double> w,
                                        const Eigen::VectorXcd& f);

// M-norm sqrt(u^* M u) of a coefficient vector.
double m_norm(const SymTridiag& M, const Eigen::VectorXcd& u);
double m_norm(const SymTridiag& M, const Eigen::VectorXd& u);

// Real matrix times complex vector (Eigen has no implicit mixed product).
Eigen::VectorXcd real_times_complex(const Eigen::MatrixXd& A,
                                    const Eigen::VectorXcd& v);
Eigen::VectorXcd realT_times_complex(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXcd& v);

}  // namespace conecalc
