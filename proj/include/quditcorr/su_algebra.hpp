#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <vector>

#include "quditcorr/linalg.hpp"

namespace quditcorr {

// Generalized Gell-Mann generators of su(d): d^2-1 traceless Hermitian
// matrices with tr(l_j l_k) = 2 delta_jk.
//
// Ordering convention: generators come in blocks k = 2..d. Block k holds the
// off-diagonal pairs (symmetric then antisymmetric) for rows 1..k-1 against
// column k, followed by the k-th diagonal generator, which therefore lands at
// index k^2-1. For d=2 this yields the Pauli matrices s1, s2, s3 and for d=3
// the conventional Gell-Mann l1..l8.
struct GellMannBasis {
  struct Entry {
    int row;
    int col;
    cxd value;
  };

  int d = 0;
  std::vector<Eigen::MatrixXcd> generators;
  std::vector<std::vector<Entry>> nonzeros;  // sparse view of each generator

  int dim() const { return d * d - 1; }
};

GellMannBasis generate_basis(int d);

// Structure constants of su(d), stored sparsely by canonical triple:
//   d_{jkl} = 1/4 tr({l_j, l_k} l_l)   (totally symmetric)
//   f_{jkl} = 1/(4i) tr([l_j, l_k] l_l) (totally antisymmetric)
// Keys are 0-based sorted index triples; lookups apply permutation symmetry.
struct StructureTensors {
  int d = 0;
  std::map<std::array<int, 3>, double> sym;      // non-decreasing triples
  std::map<std::array<int, 3>, double> antisym;  // strictly increasing triples

  int dim() const { return d * d - 1; }

  double d_coeff(int j, int k, int l) const;
  double f_coeff(int j, int k, int l) const;

  // Dense slices (Delta_k)_{jl} = d_{jkl} and (F_k)_{jl} = f_{jkl},
  // materialized on demand from the sparse triples.
  Eigen::MatrixXd delta_matrix(int k) const;
  Eigen::MatrixXd f_matrix(int k) const;
};

StructureTensors structure_constants(const GellMannBasis& basis);

// (n * m)_j = sqrt(d(d-1)/2) / (d-2) * sum_{kl} d_{jkl} n_k m_l.
// Undefined for d = 2 (throws StarUndefinedError).
Eigen::VectorXd star(const Eigen::VectorXd& n, const Eigen::VectorXd& m,
                     const StructureTensors& tensors);

// (n ^ m)_j = sqrt(d(d-1)/2) / (d-2) * sum_{kl} f_{jkl} n_k m_l.
Eigen::VectorXd wedge(const Eigen::VectorXd& n, const Eigen::VectorXd& m,
                      const StructureTensors& tensors);

// Adjoint representation of U in SU(d) on Bloch coordinates:
// R(U)_jk = 1/2 tr(l_j U l_k U+). Orthogonal, and R(U1 U2) = R(U1) R(U2).
struct AdjointMatrix {
  int d = 0;
  Eigen::MatrixXd entries;
};

AdjointMatrix adjoint_rep(const Eigen::MatrixXcd& u,
                          const GellMannBasis& basis);

// Necessary condition for V to lie in R(SU(d)): the symmetric tensor d_{jkl}
// is invariant under the cubic action of V.
bool preserves_d_tensor(const Eigen::MatrixXd& v,
                        const StructureTensors& tensors, double tol);

struct GroupDims {
  int dim_su;
  int dim_adjoint;
  int dim_orthogonal;
};

// (d^2-1, d^2-1, (d^2-1)(d^2-2)/2): the adjoint image sits strictly inside
// O(d^2-1) exactly when d >= 3.
GroupDims dims_table(int d);

}  // namespace quditcorr
