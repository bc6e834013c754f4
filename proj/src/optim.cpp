#include "quditcorr/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace quditcorr {

NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const int n = static_cast<int>(start.size());
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 0.5 / n;
  const double delta = 1.0 - 1.0 / n;

  long evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return objective(x);
  };

  std::vector<Eigen::VectorXd> verts(n + 1, start);
  std::vector<double> fvals(n + 1);
  for (int i = 0; i < n; ++i) verts[i + 1](i) += options.initial_step;
  for (int i = 0; i <= n; ++i) fvals[i] = eval(verts[i]);

  std::vector<int> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  auto sort_order = [&] {
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fvals[a] < fvals[b]; });
  };

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    sort_order();
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];

    if (fvals[worst] - fvals[best] <=
        options.f_tolerance * (std::abs(fvals[best]) + options.f_tolerance))
      break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += verts[i];
    centroid /= n;

    const Eigen::VectorXd reflected =
        centroid + alpha * (centroid - verts[worst]);
    const double f_reflected = eval(reflected);

    if (f_reflected < fvals[best]) {
      const Eigen::VectorXd expanded =
          centroid + beta * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        verts[worst] = expanded;
        fvals[worst] = f_expanded;
      } else {
        verts[worst] = reflected;
        fvals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fvals[second_worst]) {
      verts[worst] = reflected;
      fvals[worst] = f_reflected;
      continue;
    }
    if (f_reflected < fvals[worst]) {
      const Eigen::VectorXd contracted =
          centroid + gamma * (reflected - centroid);
      const double f_contracted = eval(contracted);
      if (f_contracted <= f_reflected) {
        verts[worst] = contracted;
        fvals[worst] = f_contracted;
        continue;
      }
    } else {
      const Eigen::VectorXd contracted =
          centroid - gamma * (centroid - verts[worst]);
      const double f_contracted = eval(contracted);
      if (f_contracted < fvals[worst]) {
        verts[worst] = contracted;
        fvals[worst] = f_contracted;
        continue;
      }
    }
    // Shrink toward the best vertex.
    for (int i = 0; i <= n; ++i) {
      if (i == order[0]) continue;
      verts[i] = verts[order[0]] + delta * (verts[i] - verts[order[0]]);
      fvals[i] = eval(verts[i]);
    }
  }

  sort_order();
  NelderMeadResult result;
  result.x = verts[order[0]];
  result.value = fvals[order[0]];
  result.evaluations = evals;
  result.iterations = iter;
  return result;
}

}  // namespace quditcorr
