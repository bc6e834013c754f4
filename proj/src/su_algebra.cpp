#include "quditcorr/su_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quditcorr/errors.hpp"

namespace quditcorr {

namespace {

constexpr double kDropTol = 1e-12;

// Parity of a 3-permutation relative to its sorted order.
int permutation_sign(const std::array<int, 3>& p) {
  int sign = 1;
  std::array<int, 3> a = p;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2 - i; ++j)
      if (a[j] > a[j + 1]) {
        std::swap(a[j], a[j + 1]);
        sign = -sign;
      }
  return sign;
}

std::vector<GellMannBasis::Entry> sparse_entries(const Eigen::MatrixXcd& m) {
  std::vector<GellMannBasis::Entry> out;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > 0.0) out.push_back({r, c, m(r, c)});
  return out;
}

}  // namespace

GellMannBasis generate_basis(int d) {
  if (d < 2) throw std::invalid_argument("generate_basis: d must be >= 2");

  GellMannBasis basis;
  basis.d = d;
  basis.generators.reserve(d * d - 1);

  const cxd i_unit(0.0, 1.0);
  for (int c = 1; c < d; ++c) {
    for (int r = 0; r < c; ++r) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(d, d);
      sym(r, c) = 1.0;
      sym(c, r) = 1.0;
      basis.generators.push_back(sym);

      Eigen::MatrixXcd antisym = Eigen::MatrixXcd::Zero(d, d);
      antisym(r, c) = -i_unit;
      antisym(c, r) = i_unit;
      basis.generators.push_back(antisym);
    }
    // Diagonal generator closing block k = c+1; lands at index k^2-1.
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
    const double norm = std::sqrt(2.0 / (static_cast<double>(c + 1) * c));
    for (int j = 0; j < c; ++j) diag(j, j) = norm;
    diag(c, c) = -norm * c;
    basis.generators.push_back(diag);
  }

  basis.nonzeros.reserve(basis.generators.size());
  for (const auto& g : basis.generators)
    basis.nonzeros.push_back(sparse_entries(g));
  return basis;
}

StructureTensors structure_constants(const GellMannBasis& basis) {
  if (basis.d < 2 || static_cast<int>(basis.generators.size()) != basis.dim())
    throw std::invalid_argument("structure_constants: invalid basis");

  StructureTensors tensors;
  tensors.d = basis.d;
  const int n = basis.dim();

  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      const Eigen::MatrixXcd prod = basis.generators[j] * basis.generators[k];
      const Eigen::MatrixXcd anticomm = prod + prod.adjoint();
      const Eigen::MatrixXcd comm = prod - prod.adjoint();
      for (int l = k; l < n; ++l) {
        const cxd td = 0.25 * (anticomm * basis.generators[l]).trace();
        if (std::abs(td.imag()) > kDropTol)
          throw InternalConsistencyError(
              "structure_constants: d_jkl trace not real");
        if (std::abs(td.real()) > kDropTol)
          tensors.sym[{j, k, l}] = td.real();

        if (j < k && k < l) {
          const cxd tf = (comm * basis.generators[l]).trace() / cxd(0.0, 4.0);
          if (std::abs(tf.imag()) > kDropTol)
            throw InternalConsistencyError(
                "structure_constants: f_jkl trace not real");
          if (std::abs(tf.real()) > kDropTol)
            tensors.antisym[{j, k, l}] = tf.real();
        }
      }
    }
  }
  return tensors;
}

double StructureTensors::d_coeff(int j, int k, int l) const {
  std::array<int, 3> key{j, k, l};
  std::sort(key.begin(), key.end());
  const auto it = sym.find(key);
  return it == sym.end() ? 0.0 : it->second;
}

double StructureTensors::f_coeff(int j, int k, int l) const {
  if (j == k || k == l || j == l) return 0.0;
  const std::array<int, 3> raw{j, k, l};
  std::array<int, 3> key = raw;
  std::sort(key.begin(), key.end());
  const auto it = antisym.find(key);
  if (it == antisym.end()) return 0.0;
  return permutation_sign(raw) * it->second;
}

Eigen::MatrixXd StructureTensors::delta_matrix(int k) const {
  const int n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, value] : sym) {
    std::array<int, 3> p = key;
    do {
      if (p[1] == k) m(p[0], p[2]) = value;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return m;
}

Eigen::MatrixXd StructureTensors::f_matrix(int k) const {
  const int n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, value] : antisym) {
    std::array<int, 3> p = key;
    do {
      if (p[1] == k) m(p[0], p[2]) = permutation_sign(p) * value;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return m;
}

namespace {

enum class Product { Star, Wedge };

Eigen::VectorXd bilinear_product(const Eigen::VectorXd& n,
                                 const Eigen::VectorXd& m,
                                 const StructureTensors& tensors,
                                 Product which) {
  if (tensors.d == 2)
    throw StarUndefinedError(
        "star/wedge: undefined for d = 2 (1/(d-2) prefactor)");
  const int dim = tensors.dim();
  if (n.size() != dim || m.size() != dim)
    throw std::invalid_argument("star/wedge: vector length must be d^2-1");

  const double d = tensors.d;
  const double prefactor = std::sqrt(d * (d - 1.0) / 2.0) / (d - 2.0);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  if (which == Product::Star) {
    for (const auto& [key, value] : tensors.sym) {
      std::array<int, 3> p = key;
      do {
        out(p[0]) += value * n(p[1]) * m(p[2]);
      } while (std::next_permutation(p.begin(), p.end()));
    }
  } else {
    for (const auto& [key, value] : tensors.antisym) {
      std::array<int, 3> p = key;
      do {
        out(p[0]) += permutation_sign(p) * value * n(p[1]) * m(p[2]);
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
  return prefactor * out;
}

}  // namespace

Eigen::VectorXd star(const Eigen::VectorXd& n, const Eigen::VectorXd& m,
                     const StructureTensors& tensors) {
  return bilinear_product(n, m, tensors, Product::Star);
}

Eigen::VectorXd wedge(const Eigen::VectorXd& n, const Eigen::VectorXd& m,
                      const StructureTensors& tensors) {
  return bilinear_product(n, m, tensors, Product::Wedge);
}

AdjointMatrix adjoint_rep(const Eigen::MatrixXcd& u,
                          const GellMannBasis& basis) {
  const int d = basis.d;
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("adjoint_rep: unitary size mismatch");
  if (unitarity_residual(u) > 1e-10)
    throw NonUnitaryError("adjoint_rep: input is not unitary within 1e-10");

  const int n = basis.dim();
  AdjointMatrix adj;
  adj.d = d;
  adj.entries.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXcd rotated = u * basis.generators[k] * u.adjoint();
    for (int j = 0; j < n; ++j) {
      cxd t = 0.0;
      for (const auto& e : basis.nonzeros[j]) t += e.value * rotated(e.col, e.row);
      adj.entries(j, k) = 0.5 * t.real();
    }
  }
  return adj;
}

bool preserves_d_tensor(const Eigen::MatrixXd& v,
                        const StructureTensors& tensors, double tol) {
  const int n = tensors.dim();
  if (v.rows() != n || v.cols() != n)
    throw std::invalid_argument("preserves_d_tensor: matrix must be (d^2-1)^2");

  std::vector<Eigen::MatrixXd> deltas;
  std::vector<Eigen::MatrixXd> rotated;
  deltas.reserve(n);
  rotated.reserve(n);
  for (int k = 0; k < n; ++k) {
    deltas.push_back(tensors.delta_matrix(k));
    rotated.push_back(v.transpose() * deltas[k] * v);
  }

  double residual = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd transformed = Eigen::MatrixXd::Zero(n, n);
    for (int kp = 0; kp < n; ++kp) transformed += v(kp, k) * rotated[kp];
    residual = std::max(residual,
                        (transformed - deltas[k]).cwiseAbs().maxCoeff());
    if (residual > tol) return false;
  }
  return residual <= tol;
}

GroupDims dims_table(int d) {
  if (d < 2) throw std::invalid_argument("dims_table: d must be >= 2");
  const int n = d * d - 1;
  return {n, n, n * (n - 1) / 2};
}

}  // namespace quditcorr
