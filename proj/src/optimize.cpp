#include "qvl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace qvl {

namespace {

std::vector<double> clipped(std::vector<double> x, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], lo[i], hi[i]);
  }
  return x;
}

}  // namespace

OptResult nelder_mead_bounded(const ScalarObjective& f,
                              const std::vector<double>& x0,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi, int max_evals) {
  const std::size_t n = x0.size();
  if (n == 0 || max_evals < 1) {
    throw std::invalid_argument("nelder_mead: empty point or budget");
  }

  OptResult best;
  best.fx = std::numeric_limits<double>::infinity();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    const double fx = f(x);
    ++evals;
    if (fx < best.fx) {
      best.fx = fx;
      best.x = x;
    }
    return fx;
  };

  std::vector<std::vector<double>> simplex{clipped(x0, lo, hi)};
  std::vector<double> fvals{eval(simplex[0])};
  if (evals >= max_evals) {
    best.evaluations = evals;
    return best;
  }

  const double step = 0.25;
  for (std::size_t i = 0; i < n && evals < max_evals; ++i) {
    auto v = simplex[0];
    v[i] += (v[i] + step <= hi[i]) ? step : -step;
    v = clipped(v, lo, hi);
    simplex.push_back(v);
    fvals.push_back(eval(v));
  }

  // Standard reflect/expand/contract/shrink loop, every trial point clipped.
  while (evals < max_evals && simplex.size() == n + 1) {
    std::vector<std::size_t> order(simplex.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    {
      std::vector<std::vector<double>> s2;
      std::vector<double> f2;
      for (std::size_t i : order) {
        s2.push_back(simplex[i]);
        f2.push_back(fvals[i]);
      }
      simplex = std::move(s2);
      fvals = std::move(f2);
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = centroid[j] + coef * (centroid[j] - simplex[n][j]);
      }
      return clipped(std::move(x), lo, hi);
    };

    auto xr = blend(1.0);
    const double fr = eval(xr);
    if (evals >= max_evals) break;

    if (fr < fvals[0]) {
      auto xe = blend(2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fvals[n] = fe;
      } else {
        simplex[n] = xr;
        fvals[n] = fr;
      }
    } else if (fr < fvals[n - 1]) {
      simplex[n] = xr;
      fvals[n] = fr;
    } else {
      auto xc = blend(fr < fvals[n] ? 0.5 : -0.5);
      const double fc = eval(xc);
      if (evals >= max_evals) break;
      if (fc < std::min(fr, fvals[n])) {
        simplex[n] = xc;
        fvals[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n && evals < max_evals; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          }
          fvals[i] = eval(simplex[i]);
        }
      }
    }
  }

  best.evaluations = evals;
  return best;
}

OptResult lbfgs_bounded(const ScalarObjective& f, const GradientFn& grad,
                        const std::vector<double>& x0,
                        const std::vector<double>& lo,
                        const std::vector<double>& hi, int max_iters) {
  const std::size_t n = x0.size();
  if (n == 0 || max_iters < 1) {
    throw std::invalid_argument("lbfgs: empty point or budget");
  }
  constexpr std::size_t memory = 5;

  OptResult res;
  res.x = clipped(x0, lo, hi);
  res.fx = f(res.x);
  res.evaluations = 1;

  std::deque<std::vector<double>> s_hist, y_hist;
  std::vector<double> g = grad(res.x);

  for (int iter = 0; iter < max_iters; ++iter) {
    // Two-loop recursion for the search direction.
    std::vector<double> q = g;
    std::vector<double> alphas(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      const auto& s = s_hist[i];
      const auto& y = y_hist[i];
      double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
      if (sy <= 1e-12) {
        alphas[i] = 0.0;
        continue;
      }
      double sq = std::inner_product(s.begin(), s.end(), q.begin(), 0.0);
      alphas[i] = sq / sy;
      for (std::size_t j = 0; j < n; ++j) q[j] -= alphas[i] * y[j];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) {
      const auto& s = s_hist.back();
      const auto& y = y_hist.back();
      double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
      double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
      if (sy > 1e-12 && yy > 1e-12) gamma = sy / yy;
    }
    for (auto& v : q) v *= gamma;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const auto& s = s_hist[i];
      const auto& y = y_hist[i];
      double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
      if (sy <= 1e-12) continue;
      double yq = std::inner_product(y.begin(), y.end(), q.begin(), 0.0);
      for (std::size_t j = 0; j < n; ++j) q[j] += (alphas[i] - yq / sy) * s[j];
    }

    // Backtracking along -q with projection into the box.
    double t = 1.0;
    bool accepted = false;
    std::vector<double> x_new;
    double f_new = 0.0;
    for (int ls = 0; ls < 20; ++ls) {
      x_new = res.x;
      for (std::size_t j = 0; j < n; ++j) x_new[j] -= t * q[j];
      x_new = clipped(std::move(x_new), lo, hi);
      f_new = f(x_new);
      ++res.evaluations;
      if (f_new < res.fx) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> g_new = grad(x_new);
    std::vector<double> s(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = x_new[j] - res.x[j];
      y[j] = g_new[j] - g[j];
    }
    s_hist.push_back(std::move(s));
    y_hist.push_back(std::move(y));
    if (s_hist.size() > memory) {
      s_hist.pop_front();
      y_hist.pop_front();
    }
    res.x = std::move(x_new);
    res.fx = f_new;
    g = std::move(g_new);

    double gnorm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
    if (gnorm < 1e-10) break;
  }
  return res;
}

}  // namespace qvl
