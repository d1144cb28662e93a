#include "qvl/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qvl/optimize.hpp"

namespace qvl {

namespace {

constexpr double kWeightBound = 2.0 * std::numbers::pi;

StateVector evolve(const VariationalModel& m, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != m.fm.n_qubits) {
    throw ModelError("input dimension != n_qubits");
  }
  const Circuit c = compose_model(build_feature_map(m.fm, x),
                                  build_ansatz(m.an, m.weights));
  return run_circuit(c, StateVector(c.n_qubits));
}

}  // namespace

WeightVector tile_point(const std::vector<double>& pt, int length) {
  if (pt.empty() || length < 1) throw ModelError("empty point or length");
  WeightVector w(length);
  for (int i = 0; i < length; ++i) w[i] = pt[i % pt.size()];
  return w;
}

OutputMap fit_output_map(const std::vector<double>& y) {
  if (y.empty()) throw ModelError("empty target vector");
  const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
  return {.scale = (*mx - *mn) / 2.0, .offset = (*mx + *mn) / 2.0};
}

std::vector<double> forward_classify(const VariationalModel& m,
                                     const std::vector<double>& x) {
  if (m.n_classes < 2) throw ModelError("need at least 2 classes");
  const StateVector s = evolve(m, x);
  std::vector<double> probs(m.n_classes, 0.0);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    probs[std::popcount(k) % m.n_classes] += std::norm(s.amps()[k]);
  }
  return probs;
}

int predict_class(const VariationalModel& m, const std::vector<double>& x) {
  const auto probs = forward_classify(m, x);
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) -
                          probs.begin());
}

double raw_expectation(const VariationalModel& m, const std::vector<double>& x) {
  return expectation(evolve(m, x), DiagonalObservable::z_parity());
}

double forward_regress(const VariationalModel& m, const std::vector<double>& x) {
  return m.output_map.offset + m.output_map.scale * raw_expectation(m, x);
}

double cross_entropy_loss(const VariationalModel& m, const Matrix& X,
                          const std::vector<double>& y) {
  if (X.empty() || X.size() != y.size()) throw ModelError("bad batch");
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const auto probs = forward_classify(m, X[i]);
    const int label = static_cast<int>(y[i]);
    loss -= std::log(std::max(probs[label], 1e-12));
  }
  return loss / static_cast<double>(X.size());
}

double mse_loss(const VariationalModel& m, const Matrix& X,
                const std::vector<double>& y) {
  if (X.empty() || X.size() != y.size()) throw ModelError("bad batch");
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double e = forward_regress(m, X[i]) - y[i];
    loss += e * e;
  }
  return loss / static_cast<double>(X.size());
}

double parameter_shift_gradient(const VariationalModel& m, const Matrix& X,
                                const std::vector<double>& y, int index) {
  if (index < 0 || index >= static_cast<int>(m.weights.size())) {
    throw ModelError("weight index out of range");
  }
  VariationalModel plus = m, minus = m;
  plus.weights[index] += std::numbers::pi / 2.0;
  minus.weights[index] -= std::numbers::pi / 2.0;

  double grad = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    // d<O>/dtheta for an RY parameter, then the chain rule through the
    // squared error.
    const double dexp =
        (raw_expectation(plus, X[i]) - raw_expectation(minus, X[i])) / 2.0;
    const double err = forward_regress(m, X[i]) - y[i];
    grad += 2.0 * err * m.output_map.scale * dexp;
  }
  return grad / static_cast<double>(X.size());
}

std::vector<double> parameter_shift_gradient_all(const VariationalModel& m,
                                                 const Matrix& X,
                                                 const std::vector<double>& y) {
  std::vector<double> g(m.weights.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    g[j] = parameter_shift_gradient(m, X, y, static_cast<int>(j));
  }
  return g;
}

VariationalModel train_classifier(VariationalModel m, const Matrix& X,
                                  const std::vector<double>& y,
                                  const TrainConfig& cfg) {
  if (X.empty()) throw ModelError("empty training set");
  const std::size_t n = m.weights.size();
  const std::vector<double> lo(n, -kWeightBound), hi(n, kWeightBound);
  auto objective = [&](const std::vector<double>& w) {
    VariationalModel cand = m;
    cand.weights = w;
    return cross_entropy_loss(cand, X, y);
  };
  const OptResult res =
      nelder_mead_bounded(objective, m.weights, lo, hi, cfg.max_iterations);
  m.weights = res.x;
  return m;
}

VariationalModel train_regressor(VariationalModel m, const Matrix& X,
                                 const std::vector<double>& y,
                                 const TrainConfig& cfg) {
  if (X.empty()) throw ModelError("empty training set");
  const std::size_t n = m.weights.size();
  const std::vector<double> lo(n, -kWeightBound), hi(n, kWeightBound);
  auto objective = [&](const std::vector<double>& w) {
    VariationalModel cand = m;
    cand.weights = w;
    return mse_loss(cand, X, y);
  };
  auto gradient = [&](const std::vector<double>& w) {
    VariationalModel cand = m;
    cand.weights = w;
    return parameter_shift_gradient_all(cand, X, y);
  };
  const OptResult res =
      lbfgs_bounded(objective, gradient, m.weights, lo, hi, cfg.max_iterations);
  m.weights = res.x;
  return m;
}

double accuracy(const std::vector<double>& pred,
                const std::vector<double>& truth) {
  if (pred.size() != truth.size() || pred.empty()) {
    throw ModelError("metric length mismatch");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double r2_score(const std::vector<double>& pred,
                const std::vector<double>& truth) {
  if (pred.size() != truth.size() || pred.empty()) {
    throw ModelError("metric length mismatch");
  }
  const double mean =
      std::accumulate(truth.begin(), truth.end(), 0.0) / truth.size();
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_res += (truth[i] - pred[i]) * (truth[i] - pred[i]);
    ss_tot += (truth[i] - mean) * (truth[i] - mean);
  }
  if (ss_tot == 0.0) return 0.0;
  return 1.0 - ss_res / ss_tot;
}

}  // namespace qvl
