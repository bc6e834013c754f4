#pragma once

#include <Eigen/Dense>
#include <vector>

#include "quditcorr/states.hpp"
#include "quditcorr/su_algebra.hpp"

namespace quditcorr {

// Rank-one local projective measurement: P_k = U P0_k U+ with P0_k the
// projectors onto the standard basis.
struct ProjectiveMeasurement {
  int d = 0;
  Eigen::MatrixXcd unitary;
  std::vector<Eigen::MatrixXcd> projectors;
};

ProjectiveMeasurement canonical_measurement(int d);

ProjectiveMeasurement measurement_from_unitary(const Eigen::MatrixXcd& u);

// P_A(rho) = sum_k (P_k (x) I) rho (P_k (x) I).
Eigen::MatrixXcd apply_local_measurement(const BipartiteState& state,
                                         const ProjectiveMeasurement& m);

// Channel action given only the measurement basis (columns of `unitary`).
// No unitarity validation; hot path for the discord optimizer.
Eigen::MatrixXcd project_subsystem_a(const Eigen::MatrixXcd& rho, int d,
                                     const Eigen::MatrixXcd& unitary);

// The measurement channel on Bloch coordinates: P_jk = 1/2 sum_m tr(l_j P_m
// l_k P_m); M = I - P is the projection onto the disturbed directions.
struct BlochProjector {
  int d = 0;
  Eigen::MatrixXd p_mat;
  Eigen::MatrixXd m_mat;
};

BlochProjector bloch_projector(const ProjectiveMeasurement& m,
                               const GellMannBasis& basis);

// S(M) = rho - P_A(rho), computed both directly and from the Bloch form
//   S = (1/d^2)[sqrt(d(d-1)/2) <Mx,l> (x) I + sum_k <MK e_k,l> (x) <e_k,l>].
// The two must agree to 1e-10 (InternalConsistencyError otherwise); the
// Bloch form is returned.
Eigen::MatrixXcd disturbance(const BipartiteState& state,
                             const ProjectiveMeasurement& m,
                             const GellMannBasis& basis);

// Q = S S* = S^2 for Hermitian S.
Eigen::MatrixXcd q_matrix(const Eigen::MatrixXcd& s);

// Q(M) for correlation matrices K = t V0, V0 orthogonal:
//   Q = (t^2/d^4)[ (4(d-1)/d) I(x)I + (2/d) I (x) sum_k X_k l_k
//                  + sum_jk Y_jk l_j (x) l_k ]
//   X_k = tr(M V0 Delta_k V0^T)
//   Y_jk = tr(V0^T M Delta_j M V0 Delta_k + V0^T M F_j M V0 F_k)
// Validates that K = t V0 is a state (NotAStateError otherwise).
Eigen::MatrixXcd q_expansion_family_a(double t, const Eigen::MatrixXd& v0,
                                      const ProjectiveMeasurement& m,
                                      const StructureTensors& tensors,
                                      const GellMannBasis& basis);

}  // namespace quditcorr
