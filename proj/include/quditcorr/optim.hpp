#pragma once

#include <Eigen/Dense>
#include <functional>

namespace quditcorr {

// Nelder-Mead direct search with the dimension-adaptive coefficients of
// Gao & Han. Suited to the piecewise-smooth objectives here (sums of
// absolute eigenvalues), where gradient methods stall on kinks.
struct NelderMeadOptions {
  int max_iterations = 2000;
  double f_tolerance = 1e-8;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  long evaluations = 0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options);

}  // namespace quditcorr
