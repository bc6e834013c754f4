#include "quditcorr/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "quditcorr/errors.hpp"

namespace quditcorr {

ProjectiveMeasurement canonical_measurement(int d) {
  if (d < 2) throw std::invalid_argument("canonical_measurement: d must be >= 2");
  ProjectiveMeasurement m;
  m.d = d;
  m.unitary = Eigen::MatrixXcd::Identity(d, d);
  m.projectors.reserve(d);
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
    p(k, k) = 1.0;
    m.projectors.push_back(std::move(p));
  }
  return m;
}

ProjectiveMeasurement measurement_from_unitary(const Eigen::MatrixXcd& u) {
  const int d = static_cast<int>(u.rows());
  if (u.cols() != d || d < 2)
    throw std::invalid_argument("measurement_from_unitary: bad matrix size");
  if (unitarity_residual(u) > 1e-10)
    throw NonUnitaryError(
        "measurement_from_unitary: input is not unitary within 1e-10");

  ProjectiveMeasurement m;
  m.d = d;
  m.unitary = u;
  m.projectors.reserve(d);
  for (int k = 0; k < d; ++k) {
    // U P0_k U+ = (k-th column of U) times its adjoint.
    const Eigen::VectorXcd col = u.col(k);
    m.projectors.push_back(col * col.adjoint());
  }
  return m;
}

Eigen::MatrixXcd apply_local_measurement(const BipartiteState& state,
                                         const ProjectiveMeasurement& m) {
  const int d = state.d;
  if (m.d != d)
    throw std::invalid_argument("apply_local_measurement: dimension mismatch");
  return project_subsystem_a(state.matrix, d, m.unitary);
}

Eigen::MatrixXcd project_subsystem_a(const Eigen::MatrixXcd& rho, int d,
                                     const Eigen::MatrixXcd& unitary) {
  // Rank-one structure (P_k = u_k u_k+, u_k the k-th column of the unitary)
  // turns (P_k (x) I) rho (P_k (x) I) into P_k (x) W_k with W_k a d x d
  // contraction of rho over subsystem A.
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d * d, d * d);
  Eigen::MatrixXcd w(d, d);
  for (int k = 0; k < d; ++k) {
    const Eigen::VectorXcd u = unitary.col(k);
    w.setZero();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        w += std::conj(u(i)) * u(j) * rho.block(i * d, j * d, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out.block(i * d, j * d, d, d) += (u(i) * std::conj(u(j))) * w;
  }
  return out;
}

BlochProjector bloch_projector(const ProjectiveMeasurement& m,
                               const GellMannBasis& basis) {
  const int d = m.d;
  if (basis.d != d)
    throw std::invalid_argument("bloch_projector: dimension mismatch");
  const int n = basis.dim();

  BlochProjector out;
  out.d = d;
  out.p_mat = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : m.projectors) {
    std::vector<Eigen::MatrixXcd> plp(n);
    for (int k = 0; k < n; ++k) plp[k] = p * basis.generators[k] * p;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        cxd t = 0.0;
        for (const auto& e : basis.nonzeros[j])
          t += e.value * plp[k](e.col, e.row);
        out.p_mat(j, k) += 0.5 * t.real();
      }
  }
  out.m_mat = Eigen::MatrixXd::Identity(n, n) - out.p_mat;
  return out;
}

Eigen::MatrixXcd disturbance(const BipartiteState& state,
                             const ProjectiveMeasurement& m,
                             const GellMannBasis& basis) {
  const int d = state.d;
  const int n = basis.dim();
  if (m.d != d || basis.d != d)
    throw std::invalid_argument("disturbance: dimension mismatch");

  const Eigen::MatrixXcd direct = state.matrix - apply_local_measurement(state, m);

  const BlochProjector bp = bloch_projector(m, basis);
  const Eigen::VectorXd mx = bp.m_mat * state.x;
  const Eigen::MatrixXd mk = bp.m_mat * state.correlation;

  const double scale = std::sqrt(d * (d - 1.0) / 2.0);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);

  Eigen::MatrixXcd xterm = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < n; ++j)
    if (mx(j) != 0.0) xterm += scale * mx(j) * basis.generators[j];
  Eigen::MatrixXcd bloch_form = kron(xterm, eye);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd col = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < n; ++j)
      if (mk(j, k) != 0.0) col += mk(j, k) * basis.generators[j];
    bloch_form += kron(col, basis.generators[k]);
  }
  bloch_form /= static_cast<double>(d * d);

  const double residual = (direct - bloch_form).cwiseAbs().maxCoeff();
  if (residual > 1e-10)
    throw InternalConsistencyError(
        "disturbance: direct and Bloch-form computations disagree (residual " +
        std::to_string(residual) + ")");
  return bloch_form;
}

Eigen::MatrixXcd q_matrix(const Eigen::MatrixXcd& s) {
  if (hermiticity_residual(s) > 1e-9)
    throw std::invalid_argument("q_matrix: input must be Hermitian");
  return s * s;
}

Eigen::MatrixXcd q_expansion_family_a(double t, const Eigen::MatrixXd& v0,
                                      const ProjectiveMeasurement& m,
                                      const StructureTensors& tensors,
                                      const GellMannBasis& basis) {
  const int d = basis.d;
  const int n = basis.dim();
  if (tensors.d != d || m.d != d)
    throw std::invalid_argument("q_expansion_family_a: dimension mismatch");
  if (v0.rows() != n || v0.cols() != n)
    throw std::invalid_argument("q_expansion_family_a: V0 size mismatch");
  if (orthogonality_residual(v0) > 1e-10)
    throw NonOrthogonalError(
        "q_expansion_family_a: V0 is not orthogonal within 1e-10");

  // Validates that K = t V0 really is a state.
  bipartite_compose(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
                    t * v0, basis);

  const Eigen::MatrixXd mmat = bloch_projector(m, basis).m_mat;
  const Eigen::MatrixXd mv = mmat * v0;

  std::vector<Eigen::MatrixXd> deltas(n), fs(n);
  for (int k = 0; k < n; ++k) {
    deltas[k] = tensors.delta_matrix(k);
    fs[k] = tensors.f_matrix(k);
  }

  Eigen::VectorXd xk(n);
  for (int k = 0; k < n; ++k)
    xk(k) = (mmat * v0 * deltas[k] * v0.transpose()).trace();

  Eigen::MatrixXd yjk(n, n);
  for (int j = 0; j < n; ++j) {
    const Eigen::MatrixXd a = mv.transpose() * deltas[j] * mv;
    const Eigen::MatrixXd b = mv.transpose() * fs[j] * mv;
    for (int k = 0; k < n; ++k)
      yjk(j, k) = (a * deltas[k]).trace() + (b * fs[k]).trace();
  }

  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd q =
      (4.0 * (d - 1.0) / d) * Eigen::MatrixXcd::Identity(d * d, d * d);
  Eigen::MatrixXcd xsum = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < n; ++k)
    if (xk(k) != 0.0) xsum += xk(k) * basis.generators[k];
  q += (2.0 / d) * kron(eye, xsum);
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd row = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < n; ++k)
      if (yjk(j, k) != 0.0) row += yjk(j, k) * basis.generators[k];
    q += kron(basis.generators[j], row);
  }
  return (t * t / std::pow(static_cast<double>(d), 4)) * q;
}

}  // namespace quditcorr
