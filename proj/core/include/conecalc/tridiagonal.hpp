#pragma once

// Symmetric tridiagonal storage plus the two factorizations everything here
// runs on: an LDL^T for positive definite matrices and an LU with partial
// pivoting for complex shifts of a definite pencil.

#include <Eigen/Dense>
#include <complex>

namespace conecalc {

struct SymTridiag {
  Eigen::VectorXd diag;  // n entries
  Eigen::VectorXd off;   // n-1 entries; off[i] couples i and i+1

  static SymTridiag zero(int n);
  int size() const { return static_cast<int>(diag.size()); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXd to_dense() const;
};

// a*A + b*B entrywise; sizes must agree.
SymTridiag add_scaled(double a, const SymTridiag& A, double b,
                      const SymTridiag& B);

// LDL^T of a positive definite symmetric tridiagonal matrix.
class TridiagLDLT {
 public:
  explicit TridiagLDLT(const SymTridiag& A);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;
  double min_pivot() const { return min_pivot_; }

 private:
  Eigen::VectorXd d_, l_;
  double min_pivot_ = 0.0;
};

// LU with partial pivoting of the complex tridiagonal matrix A - z*B built
// from two symmetric tridiagonal matrices.  Factor once, solve many times.
class TridiagLU {
 public:
  TridiagLU(const SymTridiag& A, const SymTridiag& B, std::complex<double> z);
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;

 private:
  Eigen::VectorXcd d_, dl_, du_, du2_;
  std::vector<int> pivot_shift_;  // 0: no swap at step i, 1: swapped
  int n_ = 0;
};

}  // namespace conecalc
