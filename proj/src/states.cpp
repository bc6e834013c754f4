#include "quditcorr/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "quditcorr/errors.hpp"

namespace quditcorr {

namespace {

constexpr double kPositivityTol = 1e-10;

// tr(rho (a (x) b)) evaluated through the sparse entries of a and b.
cxd pair_trace(const Eigen::MatrixXcd& rho, int d,
               const std::vector<GellMannBasis::Entry>& a,
               const std::vector<GellMannBasis::Entry>& b) {
  cxd sum = 0.0;
  for (const auto& ea : a)
    for (const auto& eb : b)
      // tr(rho (a x b)) = sum rho_{(i alpha),(j beta)} a_{j i} b_{beta alpha}
      sum += ea.value * eb.value *
             rho(ea.col * d + eb.col, ea.row * d + eb.row);
  return sum;
}

}  // namespace

DensityMatrix bloch_to_density(const BlochVector& n,
                               const GellMannBasis& basis) {
  const int d = basis.d;
  if (n.d != d || n.n.size() != basis.dim())
    throw std::invalid_argument("bloch_to_density: length mismatch");

  const double scale = std::sqrt(d * (d - 1.0) / 2.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  for (int j = 0; j < basis.dim(); ++j)
    if (n.n(j) != 0.0) m += scale * n.n(j) * basis.generators[j];
  return {d, m / static_cast<double>(d)};
}

BlochVector density_to_bloch(const DensityMatrix& rho,
                             const GellMannBasis& basis) {
  const int d = basis.d;
  if (rho.d != d || rho.matrix.rows() != d)
    throw std::invalid_argument("density_to_bloch: dimension mismatch");

  const double scale = d / std::sqrt(2.0 * d * (d - 1.0));
  Eigen::VectorXd n(basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    cxd t = 0.0;
    for (const auto& e : basis.nonzeros[j]) t += e.value * rho.matrix(e.col, e.row);
    n(j) = scale * t.real();
  }
  return {d, n};
}

bool purity_check(const BlochVector& n, const StructureTensors& tensors,
                  double tol) {
  if (std::abs(n.n.squaredNorm() - 1.0) > tol) return false;
  if (n.d == 2) return true;
  return (star(n.n, n.n, tensors) - n.n).norm() <= tol;
}

Radii radii(int d) {
  if (d < 2) throw std::invalid_argument("radii: d must be >= 2");
  return {std::sqrt((d - 1.0) / (2.0 * d)),
          1.0 / std::sqrt(2.0 * d * (d - 1.0))};
}

double correlation_norm_bound(int d) {
  return 0.5 * d * std::sqrt(d * d - 1.0);
}

BipartiteState bipartite_compose(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y,
                                 const Eigen::MatrixXd& correlation,
                                 const GellMannBasis& basis) {
  const int d = basis.d;
  const int n = basis.dim();
  if (x.size() != n || y.size() != n || correlation.rows() != n ||
      correlation.cols() != n)
    throw std::invalid_argument("bipartite_compose: dimension mismatch");

  const double scale = std::sqrt(d * (d - 1.0) / 2.0);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d * d, d * d);
  Eigen::MatrixXcd xterm = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd yterm = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    if (x(j) != 0.0) xterm += scale * x(j) * basis.generators[j];
    if (y(j) != 0.0) yterm += scale * y(j) * basis.generators[j];
  }
  m += kron(xterm, eye) + kron(eye, yterm);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd col = Eigen::MatrixXcd::Zero(d, d);
    bool nonzero = false;
    for (int j = 0; j < n; ++j)
      if (correlation(j, k) != 0.0) {
        col += correlation(j, k) * basis.generators[j];
        nonzero = true;
      }
    if (nonzero) m += kron(col, basis.generators[k]);
  }
  m /= static_cast<double>(d * d);

  const double min_eig = min_eigenvalue_hermitian(m);
  if (min_eig < -kPositivityTol)
    throw NotAStateError(
        "bipartite_compose: (x, y, K) lies outside the state set (min "
        "eigenvalue " +
            std::to_string(min_eig) + ")",
        min_eig);

  return {d, x, y, correlation, std::move(m)};
}

BipartiteState bipartite_decompose(const Eigen::MatrixXcd& rho,
                                   const GellMannBasis& basis) {
  const int d = basis.d;
  const int n = basis.dim();
  if (rho.rows() != d * d || rho.cols() != d * d)
    throw std::invalid_argument("bipartite_decompose: dimension mismatch");
  std::string violated;
  if (!is_valid_density(rho, &violated))
    throw InvalidStateError("bipartite_decompose: " + violated);

  const DensityMatrix rho_a = partial_trace(rho, Subsystem::A);
  const DensityMatrix rho_b = partial_trace(rho, Subsystem::B);
  const Eigen::VectorXd x = density_to_bloch(rho_a, basis).n;
  const Eigen::VectorXd y = density_to_bloch(rho_b, basis).n;

  Eigen::MatrixXd correlation(n, n);
  const double scale = d * d / 4.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      correlation(j, k) =
          scale *
          pair_trace(rho, d, basis.nonzeros[j], basis.nonzeros[k]).real();

  return {d, x, y, std::move(correlation), rho};
}

DensityMatrix partial_trace(const Eigen::MatrixXcd& rho, Subsystem keep) {
  const int dd = static_cast<int>(rho.rows());
  const int d = static_cast<int>(std::lround(std::sqrt(dd)));
  if (d * d != dd || rho.cols() != dd)
    throw std::invalid_argument("partial_trace: matrix must be d^2 x d^2");

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  if (keep == Subsystem::A) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int a = 0; a < d; ++a) out(i, j) += rho(i * d + a, j * d + a);
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int i = 0; i < d; ++i) out(a, b) += rho(i * d + a, i * d + b);
  }
  return {d, std::move(out)};
}

bool is_locally_maximally_mixed(const BipartiteState& state, double tol) {
  return state.x.norm() <= tol && state.y.norm() <= tol;
}

double ppt_min_eigenvalue(const Eigen::MatrixXcd& rho) {
  const int dd = static_cast<int>(rho.rows());
  const int d = static_cast<int>(std::lround(std::sqrt(dd)));
  if (d * d != dd || rho.cols() != dd)
    throw std::invalid_argument("ppt_min_eigenvalue: matrix must be d^2 x d^2");

  Eigen::MatrixXcd pt(dd, dd);
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a)
      for (int j = 0; j < d; ++j)
        for (int b = 0; b < d; ++b)
          pt(i * d + a, j * d + b) = rho(i * d + b, j * d + a);
  return min_eigenvalue_hermitian(pt);
}

double density_validation_residual(const Eigen::MatrixXcd& m,
                                   std::string* violated) {
  const double herm = hermiticity_residual(m);
  if (herm > 1e-10) {
    if (violated) *violated = "hermiticity (residual " + std::to_string(herm) + ")";
    return herm;
  }
  const double trace_err = std::abs(m.trace() - cxd(1.0, 0.0));
  if (trace_err > 1e-10) {
    if (violated) *violated = "unit trace (residual " + std::to_string(trace_err) + ")";
    return trace_err;
  }
  const double min_eig = min_eigenvalue_hermitian(m);
  if (min_eig < -kPositivityTol) {
    if (violated)
      *violated = "positivity (min eigenvalue " + std::to_string(min_eig) + ")";
    return -min_eig;
  }
  if (violated) violated->clear();
  return 0.0;
}

bool is_valid_density(const Eigen::MatrixXcd& m, std::string* violated) {
  std::string local;
  density_validation_residual(m, &local);
  if (violated) *violated = local;
  return local.empty();
}

}  // namespace quditcorr
