#include "conecalc/tridiagonal.hpp"

#include <stdexcept>

namespace conecalc {

SymTridiag SymTridiag::zero(int n) {
  SymTridiag t;
  t.diag = Eigen::VectorXd::Zero(n);
  t.off = Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0);
  return t;
}

template <typename Vec>
static Vec tridiag_apply(const SymTridiag& t, const Vec& x) {
  const int n = t.size();
  if (x.size() != n) throw std::invalid_argument("tridiag apply: size");
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    typename Vec::Scalar acc = t.diag[i] * x[i];
    if (i > 0) acc += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) acc += t.off[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

Eigen::VectorXd SymTridiag::apply(const Eigen::VectorXd& x) const {
  return tridiag_apply(*this, x);
}
Eigen::VectorXcd SymTridiag::apply(const Eigen::VectorXcd& x) const {
  return tridiag_apply(*this, x);
}

Eigen::MatrixXd SymTridiag::to_dense() const {
  const int n = size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = diag[i];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = off[i];
  }
  return A;
}

SymTridiag add_scaled(double a, const SymTridiag& A, double b,
                      const SymTridiag& B) {
  if (A.size() != B.size()) throw std::invalid_argument("add_scaled: size");
  SymTridiag out;
  out.diag = a * A.diag + b * B.diag;
  out.off = a * A.off + b * B.off;
  return out;
}

TridiagLDLT::TridiagLDLT(const SymTridiag& A) {
  const int n = A.size();
  d_.resize(n);
  l_.resize(n > 0 ? n - 1 : 0);
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double di = A.diag[i];
    if (i > 0) di -= l_[i - 1] * l_[i - 1] * d_[i - 1];
    if (!(di > 0.0))
      throw std::runtime_error("TridiagLDLT: matrix not positive definite");
    d_[i] = di;
    min_pivot_ = std::min(min_pivot_, di);
    if (i + 1 < n) l_[i] = A.off[i] / di;
  }
}

template <typename Vec>
static Vec ldlt_solve(const Eigen::VectorXd& d, const Eigen::VectorXd& l,
                      const Vec& b) {
  const int n = static_cast<int>(d.size());
  if (b.size() != n) throw std::invalid_argument("TridiagLDLT::solve: size");
  Vec x = b;
  for (int i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
  for (int i = 0; i < n; ++i) x[i] /= d[i];
  for (int i = n - 2; i >= 0; --i) x[i] -= l[i] * x[i + 1];
  return x;
}

Eigen::VectorXd TridiagLDLT::solve(const Eigen::VectorXd& b) const {
  return ldlt_solve(d_, l_, b);
}
Eigen::VectorXcd TridiagLDLT::solve(const Eigen::VectorXcd& b) const {
  return ldlt_solve(d_, l_, b);
}

TridiagLU::TridiagLU(const SymTridiag& A, const SymTridiag& B,
                     std::complex<double> z) {
  n_ = A.size();
  if (B.size() != n_) throw std::invalid_argument("TridiagLU: size");
  d_.resize(n_);
  dl_.resize(n_ > 0 ? n_ - 1 : 0);
  du_.resize(n_ > 0 ? n_ - 1 : 0);
  du2_.resize(n_ > 1 ? n_ - 2 : 0);
  pivot_shift_.assign(n_ > 0 ? n_ - 1 : 0, 0);

  for (int i = 0; i < n_; ++i) d_[i] = A.diag[i] - z * B.diag[i];
  for (int i = 0; i + 1 < n_; ++i) dl_[i] = du_[i] = A.off[i] - z * B.off[i];

  // Gaussian elimination with partial pivoting on the three bands; a swap at
  // step i introduces a second superdiagonal entry du2_[i].
  for (int i = 0; i + 1 < n_; ++i) {
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      if (d_[i] == std::complex<double>(0.0, 0.0))
        throw std::runtime_error("TridiagLU: exact singularity");
      std::complex<double> fact = dl_[i] / d_[i];
      dl_[i] = fact;
      d_[i + 1] -= fact * du_[i];
      if (i + 2 < n_) du2_[i] = 0.0;
    } else {
      std::complex<double> fact = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = fact;
      std::complex<double> temp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = temp - fact * d_[i + 1];
      if (i + 2 < n_) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -fact * du_[i + 1];
      }
      pivot_shift_[i] = 1;
    }
  }
  if (n_ > 0 && d_[n_ - 1] == std::complex<double>(0.0, 0.0))
    throw std::runtime_error("TridiagLU: exact singularity");
}

Eigen::VectorXcd TridiagLU::solve(const Eigen::VectorXcd& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("TridiagLU::solve: size");
  Eigen::VectorXcd b = rhs;
  for (int i = 0; i + 1 < n_; ++i) {
    if (pivot_shift_[i] == 0) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      std::complex<double> temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - dl_[i] * b[i];
    }
  }
  b[n_ - 1] /= d_[n_ - 1];
  if (n_ >= 2) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
  for (int i = n_ - 3; i >= 0; --i)
    b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  return b;
}

}  // namespace conecalc
