#pragma once

#include <Eigen/Dense>

#include "quditcorr/su_algebra.hpp"

namespace quditcorr {

// Bloch coordinates of a d-level state: rho = (1/d)(I + sqrt(d(d-1)/2) <n,l>).
// ||n|| <= 1 on valid states, with pure states on the unit sphere.
struct BlochVector {
  int d = 0;
  Eigen::VectorXd n;
};

struct DensityMatrix {
  int d = 0;
  Eigen::MatrixXcd matrix;
};

// Bipartite d x d state carrying its Bloch data (x, y, K) alongside the dense
// matrix; the two representations are kept consistent by construction.
struct BipartiteState {
  int d = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd correlation;  // K_jk = (d^2/4) tr(rho l_j (x) l_k)
  Eigen::MatrixXcd matrix;      // d^2 x d^2
};

enum class Subsystem { A, B };

// Positivity is intentionally not checked here: Bloch vectors outside the
// state set reconstruct to non-positive matrices and callers decide.
DensityMatrix bloch_to_density(const BlochVector& n, const GellMannBasis& basis);

BlochVector density_to_bloch(const DensityMatrix& rho,
                             const GellMannBasis& basis);

// Pure-state conditions: <n,n> = 1, and for d >= 3 also n*n = n.
bool purity_check(const BlochVector& n, const StructureTensors& tensors,
                  double tol);

struct Radii {
  double outer;  // R_d = sqrt((d-1)/2d)
  double inner;  // r_d = 1/sqrt(2d(d-1)); R_d = (d-1) r_d
};

Radii radii(int d);

// Assembles the bipartite matrix from (x, y, K) and validates positivity
// (throws NotAStateError when the minimum eigenvalue is below -1e-10).
BipartiteState bipartite_compose(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y,
                                 const Eigen::MatrixXd& correlation,
                                 const GellMannBasis& basis);

BipartiteState bipartite_decompose(const Eigen::MatrixXcd& rho,
                                   const GellMannBasis& basis);

DensityMatrix partial_trace(const Eigen::MatrixXcd& rho, Subsystem keep);

bool is_locally_maximally_mixed(const BipartiteState& state, double tol);

// Minimum eigenvalue of the partial transpose (taken on subsystem B; the
// spectrum is side-independent). Negative values witness entanglement.
double ppt_min_eigenvalue(const Eigen::MatrixXcd& rho);

// Validation helpers shared by constructors, readers, and tests.
double density_validation_residual(const Eigen::MatrixXcd& m,
                                   std::string* violated = nullptr);
bool is_valid_density(const Eigen::MatrixXcd& m, std::string* violated = nullptr);

// Frobenius bound on correlation matrices of states: (d/2) sqrt(d^2-1).
double correlation_norm_bound(int d);

}  // namespace quditcorr
