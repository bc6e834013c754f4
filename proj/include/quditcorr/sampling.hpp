#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quditcorr/discord.hpp"
#include "quditcorr/rng.hpp"
#include "quditcorr/states.hpp"

namespace quditcorr {

enum class Ensemble {
  HaarUnitary,
  HsDensity,
  LmmRejection,
  FamilyA,
  FamilyAA,
};

std::string ensemble_name(Ensemble ensemble);
Ensemble ensemble_from_name(const std::string& name);

struct SamplerConfig {
  std::uint64_t seed = 0;
  int count = 1;
  int d = 2;
  Ensemble ensemble = Ensemble::HsDensity;
};

struct SummaryStats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

// One row per sampled state in a bound experiment.
struct BoundSample {
  int index = 0;
  double xi = 0.0;
  double d1_bound = 0.0;
  double d1_value = 0.0;
  double d1_margin = 0.0;
  double d2_bound = 0.0;
  double d2_value = 0.0;
  double d2_margin = 0.0;
};

struct ContainmentSample {
  std::string check;  // insphere | bloch-norm | b2-ball | unitarity
  int index = 0;
  double quantity = 0.0;
  double limit = 0.0;
  double margin = 0.0;  // >= 0 means inside the allowed region
};

struct ExperimentReport {
  std::string kind;  // bound | containment | haar-unitary
  SamplerConfig config;
  OptimizerConfig optimizer;
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;
  std::map<std::string, SummaryStats> statistics;
  std::map<std::string, double> extras;  // e.g. lmm acceptance rate
  std::vector<BoundSample> bound_rows;
  std::vector<ContainmentSample> containment_rows;
};

// Haar-distributed unitary: Ginibre matrix, QR, R-diagonal phase fix.
Eigen::MatrixXcd haar_unitary(int d, Rng& rng);

// Haar-distributed real orthogonal matrix.
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng);

// Hilbert-Schmidt ensemble: G G+ / tr(G G+) for complex Gaussian G.
DensityMatrix random_density(int n, Rng& rng);

// Random locally maximally mixed state: draw a random bipartite density,
// zero the marginals, recompose, accept if positive. `tries_out`, when
// given, receives the number of draws used.
BipartiteState random_lmm_state(int d, Rng& rng, int max_tries,
                                const GellMannBasis& basis,
                                int* tries_out = nullptr);

// Samples states from the configured ensemble and checks the optimizer
// against the Xi lower bounds for both D1 and D2.
ExperimentReport run_bound_experiment(const SamplerConfig& cfg,
                                      const OptimizerConfig& opt);

// Checks (a) positivity inside the Bloch insphere, (b) ||n|| <= 1 for random
// states, (c) the Frobenius ball bound on correlation matrices of random
// bipartite states.
ExperimentReport run_containment_experiment(const SamplerConfig& cfg);

// Unitarity residuals and first-moment statistics for the haar-unitary
// ensemble.
ExperimentReport run_unitary_experiment(const SamplerConfig& cfg);

}  // namespace quditcorr
