#include "quditcorr/discord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quditcorr/errors.hpp"
#include "quditcorr/optim.hpp"
#include "quditcorr/parallel.hpp"
#include "quditcorr/sampling.hpp"

namespace quditcorr {

namespace {

enum class Measure { TraceNorm, HilbertSchmidt };

Eigen::MatrixXcd unitary_from_angles(const Eigen::VectorXd& theta,
                                     const GellMannBasis& basis) {
  const int d = basis.d;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < basis.dim(); ++j)
    if (theta(j) != 0.0) h += (0.5 * theta(j)) * basis.generators[j];
  return exp_i_hermitian(h);
}

double objective_value(const BipartiteState& state, const Eigen::MatrixXcd& u,
                       Measure measure) {
  const Eigen::MatrixXcd s =
      state.matrix - project_subsystem_a(state.matrix, state.d, u);
  const double d = state.d;
  if (measure == Measure::TraceNorm)
    return (d / (2.0 * (d - 1.0))) * trace_norm_hermitian(s);
  return (d / (d - 1.0)) * s.squaredNorm();
}

DiscordResult run_multistart(const BipartiteState& state,
                             const OptimizerConfig& cfg,
                             const GellMannBasis& basis, Measure measure) {
  validate_config(cfg);
  if (basis.d != state.d)
    throw std::invalid_argument("discord: basis dimension mismatch");

  const int n = basis.dim();
  const char* tag =
      measure == Measure::TraceNorm ? "d1-start" : "d2-start";

  auto objective = [&](const Eigen::VectorXd& theta) {
    return objective_value(state, unitary_from_angles(theta, basis), measure);
  };

  std::vector<double> values(cfg.starts);
  std::vector<Eigen::VectorXd> minimizers(cfg.starts);
  std::vector<long> evals(cfg.starts);

  parallel_for_index(cfg.starts, cfg.parallel, [&](int start) {
    Rng rng = Rng::substream(cfg.seed, tag, static_cast<std::uint64_t>(start));
    Eigen::VectorXd theta(n);
    for (int j = 0; j < n; ++j) theta(j) = rng.uniform(-M_PI, M_PI);

    NelderMeadOptions coarse;
    coarse.max_iterations = (3 * cfg.max_iterations) / 4;
    coarse.f_tolerance = cfg.objective_tolerance;
    coarse.initial_step = 0.6;
    NelderMeadResult best = nelder_mead(objective, theta, coarse);

    // Second pass from the found point with a small simplex; recovers the
    // last digits when the coarse simplex has degenerated.
    NelderMeadOptions polish;
    polish.max_iterations = cfg.max_iterations - coarse.max_iterations;
    polish.f_tolerance = cfg.objective_tolerance * 0.1;
    polish.initial_step = 0.05;
    NelderMeadResult refined = nelder_mead(objective, best.x, polish);

    const bool keep_refined = refined.value < best.value;
    values[start] = keep_refined ? refined.value : best.value;
    minimizers[start] = keep_refined ? refined.x : best.x;
    evals[start] = best.evaluations + refined.evaluations;
  });

  DiscordResult result;
  result.per_start_values = values;
  int argmin = 0;
  for (int s = 1; s < cfg.starts; ++s)
    if (values[s] < values[argmin]) argmin = s;
  result.value = values[argmin];
  result.best_unitary = unitary_from_angles(minimizers[argmin], basis);
  result.objective_evals = 0;
  for (long e : evals) result.objective_evals += e;

  const LowerBounds lb = lower_bounds(state.correlation, state.d);
  result.lower_bound = measure == Measure::TraceNorm ? lb.d1 : lb.d2;
  return result;
}

}  // namespace

void validate_config(const OptimizerConfig& cfg) {
  if (cfg.starts < 1)
    throw InvalidConfigError("optimizer config: starts must be >= 1");
  if (cfg.max_iterations < 1)
    throw InvalidConfigError("optimizer config: max_iterations must be >= 1");
  if (!(cfg.objective_tolerance > 0.0))
    throw InvalidConfigError(
        "optimizer config: objective_tolerance must be > 0");
}

double d1_objective(const BipartiteState& state, const Eigen::MatrixXcd& u,
                    const GellMannBasis& basis) {
  if (basis.d != state.d)
    throw std::invalid_argument("d1_objective: dimension mismatch");
  measurement_from_unitary(u);  // validates unitarity
  return objective_value(state, u, Measure::TraceNorm);
}

double trace_distance_objective(const BipartiteState& state,
                                const Eigen::MatrixXcd& u,
                                const GellMannBasis& basis) {
  const double d = state.d;
  return d1_objective(state, u, basis) * 2.0 * (d - 1.0) / d;
}

double d2_objective(const BipartiteState& state, const Eigen::MatrixXcd& u,
                    const GellMannBasis& basis) {
  if (basis.d != state.d)
    throw std::invalid_argument("d2_objective: dimension mismatch");
  measurement_from_unitary(u);
  return objective_value(state, u, Measure::HilbertSchmidt);
}

DiscordResult d1_discord(const BipartiteState& state,
                         const OptimizerConfig& cfg,
                         const GellMannBasis& basis) {
  return run_multistart(state, cfg, basis, Measure::TraceNorm);
}

DiscordResult d2_discord(const BipartiteState& state,
                         const OptimizerConfig& cfg,
                         const GellMannBasis& basis) {
  return run_multistart(state, cfg, basis, Measure::HilbertSchmidt);
}

double xi(const Eigen::MatrixXd& correlation, int d) {
  const int n = d * d - 1;
  if (correlation.rows() != n || correlation.cols() != n)
    throw std::invalid_argument("xi: correlation matrix must be (d^2-1)^2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      correlation * correlation.transpose(), Eigen::EigenvaluesOnly);
  // Ascending eigenvalues; keeping the lowest n-(d-1) skips the d-1 largest.
  double sum = 0.0;
  for (int i = 0; i < n - (d - 1); ++i)
    sum += std::max(0.0, es.eigenvalues()(i));
  return sum;
}

LowerBounds lower_bounds(const Eigen::MatrixXd& correlation, int d) {
  const double value = xi(correlation, d);
  const double dd = d;
  return {std::sqrt(value) / (dd * (dd - 1.0)),
          4.0 * value / (dd * dd * dd * (dd - 1.0))};
}

I0Matrix i0_matrix(const GellMannBasis& basis) {
  const int n = basis.dim();
  I0Matrix i0;
  i0.d = basis.d;
  i0.diag.resize(n);
  for (int k = 0; k < n; ++k) {
    const cxd t =
        0.5 * (basis.generators[k].transpose() * basis.generators[k]).trace();
    i0.diag(k) = t.real() > 0.0 ? 1.0 : -1.0;
  }
  return i0;
}

FamilySpec FamilySpec::family_a(int d, double t, const Eigen::MatrixXcd& u) {
  FamilySpec spec;
  spec.kind = FamilyKind::A;
  spec.d = d;
  spec.t = t;
  spec.u1 = u.size() == 0 ? Eigen::MatrixXcd::Identity(d, d) : u;
  spec.u2 = Eigen::MatrixXcd::Identity(d, d);
  return spec;
}

FamilySpec FamilySpec::family_aa(int d, double t, const Eigen::MatrixXcd& u1,
                                 const Eigen::MatrixXcd& u2) {
  FamilySpec spec;
  spec.kind = FamilyKind::AA;
  spec.d = d;
  spec.t = t;
  spec.u1 = u1.size() == 0 ? Eigen::MatrixXcd::Identity(d, d) : u1;
  spec.u2 = u2.size() == 0 ? Eigen::MatrixXcd::Identity(d, d) : u2;
  return spec;
}

FamilyRange family_t_range(FamilyKind kind, int d) {
  const double dd = d;
  if (kind == FamilyKind::A)
    return {-dd / (2.0 * (dd - 1.0)), dd / (2.0 * (dd + 1.0))};
  return {-dd / (2.0 * (dd * dd - 1.0)), dd / 2.0};
}

namespace {

void check_family_range(FamilyKind kind, int d, double t) {
  const FamilyRange range = family_t_range(kind, d);
  if (t < range.lo - 1e-12 || t > range.hi + 1e-12)
    throw FamilyRangeError("family t = " + std::to_string(t) +
                           " outside admissible range [" +
                           std::to_string(range.lo) + ", " +
                           std::to_string(range.hi) + "]");
}

}  // namespace

BipartiteState make_family(const FamilySpec& spec, const GellMannBasis& basis) {
  if (basis.d != spec.d)
    throw std::invalid_argument("make_family: basis dimension mismatch");
  check_family_range(spec.kind, spec.d, spec.t);

  const int n = basis.dim();
  Eigen::MatrixXd correlation(n, n);
  if (spec.kind == FamilyKind::A) {
    correlation = spec.t * adjoint_rep(spec.u1, basis).entries;
  } else {
    const Eigen::MatrixXd v1 = adjoint_rep(spec.u1, basis).entries;
    const Eigen::MatrixXd v2 = adjoint_rep(spec.u2, basis).entries;
    correlation = spec.t * v1 * i0_matrix(basis).diag.asDiagonal() *
                  v2.transpose();
  }
  return bipartite_compose(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
                           correlation, basis);
}

double analytic_d1(const FamilySpec& spec) {
  check_family_range(spec.kind, spec.d, spec.t);
  if (spec.kind == FamilyKind::A) return std::abs(spec.t);
  return 2.0 * std::abs(spec.t) / spec.d;
}

BipartiteState werner_state(int d, double a, const GellMannBasis& basis) {
  if (a < -1.0 || a > 1.0)
    throw std::invalid_argument("werner_state: a must lie in [-1, 1]");
  if (basis.d != d)
    throw std::invalid_argument("werner_state: basis dimension mismatch");

  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  const Eigen::MatrixXcd rho =
      (Eigen::MatrixXcd::Identity(d * d, d * d) + a * swap) /
      (d * d + a * d);
  return bipartite_decompose(rho, basis);
}

BipartiteState isotropic_state(int d, double f, const GellMannBasis& basis) {
  if (f < 0.0 || f > 1.0)
    throw std::invalid_argument("isotropic_state: f must lie in [0, 1]");
  if (basis.d != d)
    throw std::invalid_argument("isotropic_state: basis dimension mismatch");

  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(d * d);
  for (int k = 0; k < d; ++k) phi(k * d + k) = 1.0 / std::sqrt(double(d));
  const Eigen::MatrixXcd proj = phi * phi.adjoint();
  const Eigen::MatrixXcd rho =
      f * proj + ((1.0 - f) / (d * d - 1.0)) *
                     (Eigen::MatrixXcd::Identity(d * d, d * d) - proj);
  return bipartite_decompose(rho, basis);
}

namespace {

// f_{jkl} is likewise invariant under R(SU(d)) but flips sign under the
// transpose map (whose Bloch action is I0), so testing it alongside the
// d tensor separates kind A from kind AA even when det gives no signal.
bool preserves_f_tensor(const Eigen::MatrixXd& v,
                        const StructureTensors& tensors, double tol) {
  const int n = tensors.dim();
  std::vector<Eigen::MatrixXd> slices(n), rotated(n);
  for (int k = 0; k < n; ++k) {
    slices[k] = tensors.f_matrix(k);
    rotated[k] = v.transpose() * slices[k] * v;
  }
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd transformed = Eigen::MatrixXd::Zero(n, n);
    for (int kp = 0; kp < n; ++kp) transformed += v(kp, k) * rotated[kp];
    if ((transformed - slices[k]).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace

FamilyParameter extract_family_parameter(const Eigen::MatrixXd& correlation,
                                         const StructureTensors& tensors,
                                         const GellMannBasis& basis) {
  const int n = tensors.dim();
  if (correlation.rows() != n || correlation.cols() != n)
    throw std::invalid_argument(
        "extract_family_parameter: correlation matrix size mismatch");
  const int d = tensors.d;

  const Eigen::MatrixXd gram = correlation * correlation.transpose();
  const double s2 = gram.trace() / n;
  if ((gram - s2 * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() >
      1e-8)
    return {FamilyMatch::None, 0.0};
  const double s = std::sqrt(std::max(s2, 0.0));
  if (s <= 1e-12) return {FamilyMatch::A, 0.0};

  const Eigen::MatrixXd w = correlation / s;
  const Eigen::VectorXd i0 = i0_matrix(basis).diag;

  if (d == 2) {
    // Closed forms: Werner K = t I, isotropic K proportional to I0; any other
    // scalar-K K^T correlation at d = 2 is family A via SO(3) = R(SU(2)).
    const double c = correlation(0, 0);
    if ((correlation - c * Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff() <= 1e-8)
      return {FamilyMatch::A, c};
    const double ci = correlation(0, 0) / i0(0);
    if ((correlation - ci * Eigen::MatrixXd(i0.asDiagonal()))
            .cwiseAbs()
            .maxCoeff() <= 1e-8)
      return {FamilyMatch::AA, ci};
    return {FamilyMatch::A, w.determinant() > 0.0 ? s : -s};
  }

  struct Candidate {
    Eigen::MatrixXd v;
    FamilyMatch kind;
    double t;
  };
  const Eigen::MatrixXd wi0 = w * i0.asDiagonal();
  const Candidate candidates[] = {
      {w, FamilyMatch::A, s},
      {-w, FamilyMatch::A, -s},
      {wi0, FamilyMatch::AA, s},
      {-wi0, FamilyMatch::AA, -s},
  };
  for (const auto& cand : candidates) {
    if (std::abs(cand.v.determinant() - 1.0) > 1e-6) continue;
    if (!preserves_d_tensor(cand.v, tensors, 1e-8)) continue;
    if (!preserves_f_tensor(cand.v, tensors, 1e-8)) continue;
    return {cand.kind, cand.t};
  }
  return {FamilyMatch::None, 0.0};
}

double oracle_d1(const BipartiteState& state, int budget, std::uint64_t seed,
                 const GellMannBasis& basis) {
  if (budget < 1) throw std::invalid_argument("oracle_d1: budget must be >= 1");
  if (basis.d != state.d)
    throw std::invalid_argument("oracle_d1: dimension mismatch");
  const int d = state.d;

  double best = std::numeric_limits<double>::infinity();
  if (d == 2) {
    // Fibonacci lattice over measurement directions on the Bloch sphere.
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < budget; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / budget;
      const double phi = golden_angle * i;
      const double theta = std::acos(std::clamp(z, -1.0, 1.0));
      Eigen::MatrixXcd u(2, 2);
      const double c = std::cos(0.5 * theta);
      const double sn = std::sin(0.5 * theta);
      u(0, 0) = c;
      u(1, 0) = std::polar(sn, phi);
      u(0, 1) = -std::polar(sn, -phi);
      u(1, 1) = c;
      best = std::min(best, objective_value(state, u, Measure::TraceNorm));
    }
    return best;
  }

  Rng rng = Rng::substream(seed, "oracle-d1", 0);
  for (int i = 0; i < budget; ++i) {
    const Eigen::MatrixXcd u = haar_unitary(d, rng);
    best = std::min(best, objective_value(state, u, Measure::TraceNorm));
  }
  return best;
}

}  // namespace quditcorr
