#pragma once

#include <Eigen/Dense>
#include <complex>

namespace quditcorr {

using cxd = std::complex<double>;

// A (x) B on C^m (x) C^n, row index i*n + a (first factor major).
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  const Eigen::Index m = a.rows(), n = b.rows(), p = a.cols(), q = b.cols();
  Eigen::MatrixXcd out(m * n, p * q);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      out.block(i * n, j * q, n, q) = a(i, j) * b;
  return out;
}

inline double hermiticity_residual(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double unitarity_residual(const Eigen::MatrixXcd& u) {
  return (u * u.adjoint() -
          Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

inline double orthogonality_residual(const Eigen::MatrixXd& v) {
  return (v * v.transpose() -
          Eigen::MatrixXd::Identity(v.rows(), v.cols()))
      .cwiseAbs()
      .maxCoeff();
}

// exp(iH) for Hermitian H, unitary to machine precision.
inline Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phases(k) = std::polar(1.0, w(k));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

// Schatten 1-norm of a Hermitian matrix: sum of |eigenvalues|.
inline double trace_norm_hermitian(const Eigen::MatrixXcd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

inline double min_eigenvalue_hermitian(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace quditcorr
