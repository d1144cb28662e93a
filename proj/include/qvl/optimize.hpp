#pragma once

#include <functional>
#include <vector>

namespace qvl {

using ScalarObjective = std::function<double(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct OptResult {
  std::vector<double> x;
  double fx = 0.0;
  int evaluations = 0;
};

// Nelder-Mead simplex with per-coordinate clipping into [lo, hi] and a hard
// objective-evaluation budget. Best-so-far is tracked across every
// evaluation, so the result never regresses on the starting point.
OptResult nelder_mead_bounded(const ScalarObjective& f,
                              const std::vector<double>& x0,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi, int max_evals);

// Projected L-BFGS with backtracking line search; max_iters outer
// iterations; accepted steps never increase f.
OptResult lbfgs_bounded(const ScalarObjective& f, const GradientFn& grad,
                        const std::vector<double>& x0,
                        const std::vector<double>& lo,
                        const std::vector<double>& hi, int max_iters);

}  // namespace qvl
