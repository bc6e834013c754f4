#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "quditcorr/measurement.hpp"
#include "quditcorr/rng.hpp"
#include "quditcorr/states.hpp"
#include "quditcorr/su_algebra.hpp"

namespace quditcorr {

// Multi-start settings for the measurement minimization. Restarts draw their
// initial angles from substreams of (seed, start index), so parallel and
// serial runs produce identical results.
struct OptimizerConfig {
  int starts = 32;
  int max_iterations = 2000;  // per start, polish included
  double objective_tolerance = 1e-8;
  std::uint64_t seed = 0;
  bool parallel = true;
};

void validate_config(const OptimizerConfig& cfg);

struct DiscordResult {
  double value = 0.0;
  Eigen::MatrixXcd best_unitary;
  long objective_evals = 0;
  std::vector<double> per_start_values;
  double lower_bound = 0.0;
};

// Trace-norm disturbance objective for the measurement generated by U:
//   (d/(2(d-1))) * || rho - P_A(rho) ||_1.
// At d = 2 the prefactor is 1 and this is the raw trace distance.
double d1_objective(const BipartiteState& state, const Eigen::MatrixXcd& u,
                    const GellMannBasis& basis);

// Raw trace distance min_M ||rho - P_A(rho)||_1, without the d-dependent
// prefactor (coincides with d1 at d = 2).
double trace_distance_objective(const BipartiteState& state,
                                const Eigen::MatrixXcd& u,
                                const GellMannBasis& basis);

// Hilbert-Schmidt counterpart: (d/(d-1)) * || rho - P_A(rho) ||_F^2.
double d2_objective(const BipartiteState& state, const Eigen::MatrixXcd& u,
                    const GellMannBasis& basis);

// Minimizes the objective over measurement unitaries U = exp(i sum_j
// theta_j l_j / 2) by seeded multi-start Nelder-Mead. The returned value is
// an upper bound on the true minimum.
DiscordResult d1_discord(const BipartiteState& state,
                         const OptimizerConfig& cfg,
                         const GellMannBasis& basis);

DiscordResult d2_discord(const BipartiteState& state,
                         const OptimizerConfig& cfg,
                         const GellMannBasis& basis);

// Xi(K): eigenvalues of K K^T in non-increasing order, summed from position
// d (1-based) on, i.e. skipping the d-1 largest.
double xi(const Eigen::MatrixXd& correlation, int d);

struct LowerBounds {
  double d1;  // sqrt(Xi) / (d(d-1))
  double d2;  // 4 Xi / (d^3 (d-1))
};

LowerBounds lower_bounds(const Eigen::MatrixXd& correlation, int d);

// Diagonal +-1 matrix with (I0)_kk = 1/2 tr(l_k^T l_k): +1 on symmetric
// generators, -1 on antisymmetric ones. I0^2 = I.
struct I0Matrix {
  int d = 0;
  Eigen::VectorXd diag;
};

I0Matrix i0_matrix(const GellMannBasis& basis);

// The two correlation-matrix families with closed-form trace-norm discord:
//   kind A:  K = t V,          V = R(U)                -> D1 = |t|
//   kind AA: K = t V1 I0 V2^T, V1 = R(U1), V2 = R(U2)  -> D1 = (2/d)|t|
enum class FamilyKind { A, AA };

struct FamilySpec {
  FamilyKind kind = FamilyKind::A;
  int d = 2;
  double t = 0.0;
  Eigen::MatrixXcd u1;  // defaults to identity
  Eigen::MatrixXcd u2;  // kind AA only

  static FamilySpec family_a(int d, double t,
                             const Eigen::MatrixXcd& u = Eigen::MatrixXcd());
  static FamilySpec family_aa(int d, double t,
                              const Eigen::MatrixXcd& u1 = Eigen::MatrixXcd(),
                              const Eigen::MatrixXcd& u2 = Eigen::MatrixXcd());
};

// Admissible t range for the family (the exact positivity range).
struct FamilyRange {
  double lo;
  double hi;
};

FamilyRange family_t_range(FamilyKind kind, int d);

// Builds the locally maximally mixed state with the family's correlation
// matrix; throws FamilyRangeError / NotAStateError.
BipartiteState make_family(const FamilySpec& spec, const GellMannBasis& basis);

double analytic_d1(const FamilySpec& spec);

// rho = (I + a F) / (d^2 + a d), F the swap; U(x)U invariant, family A with
// t = a d / (2(d + a)).
BipartiteState werner_state(int d, double a, const GellMannBasis& basis);

// rho = f |phi+><phi+| + (1-f)(I - |phi+><phi+|)/(d^2-1); U(x)conj(U)
// invariant, family AA with t = (d/2)(f d^2 - 1)/(d^2 - 1).
BipartiteState isotropic_state(int d, double f, const GellMannBasis& basis);

enum class FamilyMatch { A, AA, None };

struct FamilyParameter {
  FamilyMatch kind = FamilyMatch::None;
  double t = 0.0;
};

// Inverse classification: detects whether K has the form t V (kind A) or
// t V1 I0 V2^T (kind AA) and recovers t with its sign. Returns None when
// K K^T is not scalar.
FamilyParameter extract_family_parameter(const Eigen::MatrixXd& correlation,
                                         const StructureTensors& tensors,
                                         const GellMannBasis& basis);

// Reference minimizer, independent of the Nelder-Mead path: a Fibonacci
// sphere grid over measurement directions at d = 2, Haar-random unitaries
// for d >= 3. Returns the minimum objective seen over `budget` points.
double oracle_d1(const BipartiteState& state, int budget, std::uint64_t seed,
                 const GellMannBasis& basis);

}  // namespace quditcorr
