#include "quditcorr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quditcorr/errors.hpp"
#include "quditcorr/parallel.hpp"

namespace quditcorr {

namespace {

Eigen::MatrixXcd ginibre(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cxd(rng.normal(), rng.normal());
  return g;
}

SummaryStats summarize(const std::vector<double>& xs) {
  SummaryStats s;
  if (xs.empty()) return s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double x : xs) {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    sum += x;
  }
  s.mean = sum / static_cast<double>(xs.size());
  return s;
}

}  // namespace

std::string ensemble_name(Ensemble ensemble) {
  switch (ensemble) {
    case Ensemble::HaarUnitary:
      return "haar-unitary";
    case Ensemble::HsDensity:
      return "hs-density";
    case Ensemble::LmmRejection:
      return "lmm-rejection";
    case Ensemble::FamilyA:
      return "family-a";
    case Ensemble::FamilyAA:
      return "family-aa";
  }
  return "unknown";
}

Ensemble ensemble_from_name(const std::string& name) {
  if (name == "haar-unitary") return Ensemble::HaarUnitary;
  if (name == "hs-density") return Ensemble::HsDensity;
  if (name == "lmm-rejection") return Ensemble::LmmRejection;
  if (name == "family-a") return Ensemble::FamilyA;
  if (name == "family-aa") return Ensemble::FamilyAA;
  throw InvalidConfigError("unknown ensemble: " + name);
}

Eigen::MatrixXcd haar_unitary(int d, Rng& rng) {
  if (d < 2) throw std::invalid_argument("haar_unitary: d must be >= 2");
  const Eigen::MatrixXcd g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of R's diagonal makes the distribution Haar.
  for (int k = 0; k < d; ++k) {
    const cxd rkk = r(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= mag > 0.0 ? rkk / mag : cxd(1.0, 0.0);
  }
  return q;
}

Eigen::MatrixXd haar_orthogonal(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be >= 1");
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  return q;
}

DensityMatrix random_density(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("random_density: n must be >= 2");
  const Eigen::MatrixXcd g = ginibre(n, n, rng);
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  // Symmetrize away the last bits of rounding noise.
  m = 0.5 * (m + m.adjoint());
  return {n, std::move(m)};
}

BipartiteState random_lmm_state(int d, Rng& rng, int max_tries,
                                const GellMannBasis& basis,
                                int* tries_out) {
  if (max_tries < 1)
    throw std::invalid_argument("random_lmm_state: max_tries must be >= 1");
  const int n = basis.dim();
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    const DensityMatrix rho = random_density(d * d, rng);
    const BipartiteState full = bipartite_decompose(rho.matrix, basis);
    try {
      BipartiteState lmm =
          bipartite_compose(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
                            full.correlation, basis);
      if (tries_out) *tries_out = attempt;
      return lmm;
    } catch (const NotAStateError&) {
      // zeroing the marginals pushed the point outside the state set; retry
    }
  }
  throw RejectionExhaustedError(
      "random_lmm_state: no positive sample within max_tries");
}

ExperimentReport run_bound_experiment(const SamplerConfig& cfg,
                                      const OptimizerConfig& opt) {
  if (cfg.count < 1) throw InvalidConfigError("sampler config: count must be >= 1");
  if (cfg.d < 2) throw InvalidConfigError("sampler config: d must be >= 2");
  if (cfg.ensemble != Ensemble::LmmRejection &&
      cfg.ensemble != Ensemble::FamilyA && cfg.ensemble != Ensemble::FamilyAA)
    throw InvalidConfigError(
        "bound experiment requires the lmm-rejection, family-a or family-aa "
        "ensemble");
  validate_config(opt);

  const GellMannBasis basis = generate_basis(cfg.d);
  ExperimentReport report;
  report.kind = "bound";
  report.config = cfg;
  report.optimizer = opt;
  report.samples = cfg.count;
  report.bound_rows.resize(cfg.count);

  std::vector<int> tries(cfg.count, 1);

  parallel_for_index(cfg.count, /*parallel=*/true, [&](int i) {
    Rng rng =
        Rng::substream(cfg.seed, "bound-sample", static_cast<std::uint64_t>(i));
    BipartiteState state = [&] {
      switch (cfg.ensemble) {
        case Ensemble::FamilyA: {
          const FamilyRange range = family_t_range(FamilyKind::A, cfg.d);
          const double t = rng.uniform(range.lo, range.hi);
          return make_family(
              FamilySpec::family_a(cfg.d, t, haar_unitary(cfg.d, rng)), basis);
        }
        case Ensemble::FamilyAA: {
          const FamilyRange range = family_t_range(FamilyKind::AA, cfg.d);
          const double t = rng.uniform(range.lo, range.hi);
          return make_family(
              FamilySpec::family_aa(cfg.d, t, haar_unitary(cfg.d, rng),
                                    haar_unitary(cfg.d, rng)),
              basis);
        }
        default:
          return random_lmm_state(cfg.d, rng, 10000, basis, &tries[i]);
      }
    }();

    OptimizerConfig per_sample = opt;
    per_sample.seed =
        Rng::substream(opt.seed, "bound-opt", static_cast<std::uint64_t>(i))
            .next_u64();
    per_sample.parallel = false;  // samples already run in parallel

    const LowerBounds lb = lower_bounds(state.correlation, cfg.d);
    const DiscordResult r1 = d1_discord(state, per_sample, basis);
    const DiscordResult r2 = d2_discord(state, per_sample, basis);

    BoundSample& row = report.bound_rows[i];
    row.index = i;
    row.xi = xi(state.correlation, cfg.d);
    row.d1_bound = lb.d1;
    row.d1_value = r1.value;
    row.d1_margin = r1.value - lb.d1;
    row.d2_bound = lb.d2;
    row.d2_value = r2.value;
    row.d2_margin = r2.value - lb.d2;
  });

  std::vector<double> xis, m1, m2;
  double worst = std::numeric_limits<double>::infinity();
  int violations = 0;
  long total_tries = 0;
  for (const auto& row : report.bound_rows) {
    xis.push_back(row.xi);
    m1.push_back(row.d1_margin);
    m2.push_back(row.d2_margin);
    worst = std::min({worst, row.d1_margin, row.d2_margin});
    if (row.d1_margin < -1e-6) ++violations;
    if (row.d2_margin < -1e-6) ++violations;
  }
  for (int t : tries) total_tries += t;
  report.violations = violations;
  report.worst_margin = worst;
  report.statistics["xi"] = summarize(xis);
  report.statistics["d1_margin"] = summarize(m1);
  report.statistics["d2_margin"] = summarize(m2);
  if (cfg.ensemble == Ensemble::LmmRejection)
    report.extras["lmm_acceptance_rate"] =
        static_cast<double>(cfg.count) / static_cast<double>(total_tries);
  return report;
}

ExperimentReport run_containment_experiment(const SamplerConfig& cfg) {
  if (cfg.count < 1) throw InvalidConfigError("sampler config: count must be >= 1");
  if (cfg.d < 2) throw InvalidConfigError("sampler config: d must be >= 2");

  const GellMannBasis basis = generate_basis(cfg.d);
  const int n = basis.dim();
  const int d = cfg.d;

  ExperimentReport report;
  report.kind = "containment";
  report.config = cfg;
  report.samples = 3 * cfg.count;
  report.containment_rows.resize(3 * cfg.count);

  parallel_for_index(cfg.count, /*parallel=*/true, [&](int i) {
    // (a) vectors in the insphere ||n|| <= 1/(d-1) reconstruct to states
    {
      Rng rng = Rng::substream(cfg.seed, "containment-insphere",
                               static_cast<std::uint64_t>(i));
      Eigen::VectorXd dir(n);
      for (int j = 0; j < n; ++j) dir(j) = rng.normal();
      dir.normalize();
      const double radius =
          (1.0 / (d - 1.0)) * std::pow(rng.uniform(), 1.0 / n);
      const BlochVector bloch{d, radius * dir};
      const DensityMatrix rho = bloch_to_density(bloch, basis);
      const double min_eig = min_eigenvalue_hermitian(rho.matrix);
      ContainmentSample& row = report.containment_rows[i];
      row.check = "insphere";
      row.index = i;
      row.quantity = min_eig;
      row.limit = -1e-10;
      row.margin = min_eig + 1e-10;
    }
    // (b) Bloch vectors of random states stay inside the unit ball
    {
      Rng rng = Rng::substream(cfg.seed, "containment-norm",
                               static_cast<std::uint64_t>(i));
      const DensityMatrix rho = random_density(d, rng);
      const double norm = density_to_bloch(rho, basis).n.norm();
      ContainmentSample& row = report.containment_rows[cfg.count + i];
      row.check = "bloch-norm";
      row.index = i;
      row.quantity = norm;
      row.limit = 1.0 + 1e-10;
      row.margin = row.limit - norm;
    }
    // (c) correlation matrices stay inside the Frobenius ball B2
    {
      Rng rng = Rng::substream(cfg.seed, "containment-b2",
                               static_cast<std::uint64_t>(i));
      const DensityMatrix rho = random_density(d * d, rng);
      const BipartiteState state = bipartite_decompose(rho.matrix, basis);
      const double norm = state.correlation.norm();
      ContainmentSample& row = report.containment_rows[2 * cfg.count + i];
      row.check = "b2-ball";
      row.index = i;
      row.quantity = norm;
      row.limit = correlation_norm_bound(d) + 1e-8;
      row.margin = row.limit - norm;
    }
  });

  std::map<std::string, std::vector<double>> margins;
  double worst = std::numeric_limits<double>::infinity();
  int violations = 0;
  for (const auto& row : report.containment_rows) {
    margins[row.check].push_back(row.margin);
    worst = std::min(worst, row.margin);
    if (row.margin < 0.0) ++violations;
  }
  report.violations = violations;
  report.worst_margin = worst;
  for (const auto& [check, values] : margins)
    report.statistics[check + "_margin"] = summarize(values);
  return report;
}

ExperimentReport run_unitary_experiment(const SamplerConfig& cfg) {
  if (cfg.count < 1) throw InvalidConfigError("sampler config: count must be >= 1");
  if (cfg.d < 2) throw InvalidConfigError("sampler config: d must be >= 2");

  ExperimentReport report;
  report.kind = "haar-unitary";
  report.config = cfg;
  report.samples = cfg.count;
  report.containment_rows.resize(cfg.count);

  std::vector<double> traces_re(cfg.count), traces_im(cfg.count);
  parallel_for_index(cfg.count, /*parallel=*/true, [&](int i) {
    Rng rng = Rng::substream(cfg.seed, "haar-unitary",
                             static_cast<std::uint64_t>(i));
    const Eigen::MatrixXcd u = haar_unitary(cfg.d, rng);
    const double residual = unitarity_residual(u);
    const cxd t = u.trace() / static_cast<double>(cfg.d);
    traces_re[i] = t.real();
    traces_im[i] = t.imag();
    ContainmentSample& row = report.containment_rows[i];
    row.check = "unitarity";
    row.index = i;
    row.quantity = residual;
    row.limit = 1e-12;
    row.margin = row.limit - residual;
  });

  double worst = std::numeric_limits<double>::infinity();
  int violations = 0;
  std::vector<double> residuals;
  for (const auto& row : report.containment_rows) {
    residuals.push_back(row.quantity);
    worst = std::min(worst, row.margin);
    if (row.margin < 0.0) ++violations;
  }
  report.violations = violations;
  report.worst_margin = worst;
  report.statistics["unitarity_residual"] = summarize(residuals);
  report.extras["mean_trace_re"] = summarize(traces_re).mean;
  report.extras["mean_trace_im"] = summarize(traces_im).mean;
  return report;
}

}  // namespace quditcorr
