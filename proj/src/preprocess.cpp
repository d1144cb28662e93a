#include "qvl/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include <Eigen/Dense>

namespace qvl {

const char* scaler_name(Scaler s) {
  return s == Scaler::Std ? "std" : "mm";
}

const char* reducer_name(Reducer r) {
  return r == Reducer::Pca ? "pca" : "f";
}

namespace {

RawDataset subset(const RawDataset& ds, const std::vector<std::size_t>& idx) {
  RawDataset out;
  out.feature_names = ds.feature_names;
  out.class_names = ds.class_names;
  out.X.reserve(idx.size());
  out.y.reserve(idx.size());
  for (std::size_t i : idx) {
    out.X.push_back(ds.X[i]);
    out.y.push_back(ds.y[i]);
  }
  return out;
}

std::size_t round_count(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

}  // namespace

SplitResult split_train_test(const RawDataset& ds, double fraction,
                             std::uint64_t seed, bool stratify) {
  if (ds.n_samples() < 2) throw PreprocessError("need at least 2 samples");
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw PreprocessError("fraction must be in (0,1)");
  }
  std::mt19937_64 rng(seed);
  SplitResult res;
  if (stratify) {
    std::map<double, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ds.n_samples(); ++i) groups[ds.y[i]].push_back(i);
    for (auto& [label, members] : groups) {
      std::shuffle(members.begin(), members.end(), rng);
      const std::size_t n_train = round_count(fraction, members.size());
      for (std::size_t j = 0; j < members.size(); ++j) {
        (j < n_train ? res.train_idx : res.test_idx).push_back(members[j]);
      }
    }
    std::sort(res.train_idx.begin(), res.train_idx.end());
    std::sort(res.test_idx.begin(), res.test_idx.end());
  } else {
    std::vector<std::size_t> order(ds.n_samples());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n_train = round_count(fraction, order.size());
    res.train_idx.assign(order.begin(), order.begin() + n_train);
    res.test_idx.assign(order.begin() + n_train, order.end());
  }
  res.train = subset(ds, res.train_idx);
  res.test = subset(ds, res.test_idx);
  return res;
}

void MinMaxScaler::fit(const Matrix& train) {
  if (train.empty()) throw PreprocessError("empty training matrix");
  const std::size_t d = train[0].size();
  mins.assign(d, std::numeric_limits<double>::infinity());
  maxs.assign(d, -std::numeric_limits<double>::infinity());
  for (const auto& row : train) {
    for (std::size_t j = 0; j < d; ++j) {
      mins[j] = std::min(mins[j], row[j]);
      maxs[j] = std::max(maxs[j], row[j]);
    }
  }
}

Matrix MinMaxScaler::apply(const Matrix& m, bool clip) const {
  Matrix out(m.size(), std::vector<double>(mins.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < mins.size(); ++j) {
      const double range = maxs[j] - mins[j];
      double v = range > 0.0 ? (m[i][j] - mins[j]) / range : 0.0;
      if (clip) v = std::clamp(v, 0.0, 1.0);
      out[i][j] = v;
    }
  }
  return out;
}

void StandardScaler::fit(const Matrix& train) {
  if (train.size() < 2) throw PreprocessError("standard scaler needs >= 2 rows");
  const std::size_t d = train[0].size();
  const double n = static_cast<double>(train.size());
  means.assign(d, 0.0);
  stds.assign(d, 0.0);
  for (const auto& row : train) {
    for (std::size_t j = 0; j < d; ++j) means[j] += row[j];
  }
  for (auto& m : means) m /= n;
  for (const auto& row : train) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = row[j] - means[j];
      stds[j] += dv * dv;
    }
  }
  for (auto& s : stds) s = std::sqrt(s / n);
}

Matrix StandardScaler::apply(const Matrix& m) const {
  Matrix out(m.size(), std::vector<double>(means.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < means.size(); ++j) {
      out[i][j] = stds[j] > 0.0 ? (m[i][j] - means[j]) / stds[j] : 0.0;
    }
  }
  return out;
}

void PcaReducer::fit(const Matrix& train, int k) {
  if (train.empty()) throw PreprocessError("empty training matrix");
  const int n = static_cast<int>(train.size());
  const int d = static_cast<int>(train[0].size());
  if (k < 1 || k > d || k > n) throw PreprocessError("invalid pca dimension");

  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) X(i, j) = train[i][j];
  }
  Eigen::RowVectorXd mean = X.colwise().mean();
  X.rowwise() -= mean;
  Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw PreprocessError("pca eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues; take the top k in reverse.
  means.assign(mean.data(), mean.data() + d);
  components.assign(k, std::vector<double>(d));
  explained_variance.assign(k, 0.0);
  for (int c = 0; c < k; ++c) {
    const int src = d - 1 - c;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    int arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    for (int j = 0; j < d; ++j) components[c][j] = v(j);
    explained_variance[c] = solver.eigenvalues()(src);
  }
}

Matrix PcaReducer::apply(const Matrix& m) const {
  const std::size_t k = components.size();
  const std::size_t d = means.size();
  Matrix out(m.size(), std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += (m[i][j] - means[j]) * components[c][j];
      }
      out[i][c] = acc;
    }
  }
  return out;
}

Matrix PcaReducer::unproject(const Matrix& reduced) const {
  const std::size_t k = components.size();
  const std::size_t d = means.size();
  Matrix out(reduced.size(), std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t j = 0; j < d; ++j) {
        out[i][j] += reduced[i][c] * components[c][j];
      }
    }
  }
  return out;
}

std::vector<double> anova_f_scores(const Matrix& X,
                                   const std::vector<double>& y) {
  if (X.size() != y.size() || X.empty()) {
    throw PreprocessError("feature/label size mismatch");
  }
  std::map<double, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < y.size(); ++i) groups[y[i]].push_back(i);
  const std::size_t c = groups.size();
  const std::size_t n = y.size();
  if (c < 2) throw PreprocessError("ANOVA F undefined for a single class");

  const std::size_t d = X[0].size();
  std::vector<double> scores(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double grand = 0.0;
    for (const auto& row : X) grand += row[j];
    grand /= static_cast<double>(n);

    double ssb = 0.0, ssw = 0.0;
    for (const auto& [label, members] : groups) {
      double gm = 0.0;
      for (std::size_t i : members) gm += X[i][j];
      gm /= static_cast<double>(members.size());
      ssb += static_cast<double>(members.size()) * (gm - grand) * (gm - grand);
      for (std::size_t i : members) ssw += (X[i][j] - gm) * (X[i][j] - gm);
    }
    if (ssb <= 0.0) {
      scores[j] = 0.0;
    } else if (ssw <= 0.0) {
      scores[j] = std::numeric_limits<double>::infinity();
    } else {
      scores[j] = (ssb / static_cast<double>(c - 1)) /
                  (ssw / static_cast<double>(n - c));
    }
  }
  return scores;
}

std::vector<double> f_regression_scores(const Matrix& X,
                                        const std::vector<double>& y) {
  if (X.size() != y.size() || X.size() < 3) {
    throw PreprocessError("regression F needs >= 3 samples");
  }
  const std::size_t n = X.size();
  const std::size_t d = X[0].size();
  double ym = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  std::vector<double> scores(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double xm = 0.0;
    for (const auto& row : X) xm += row[j];
    xm /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = X[i][j] - xm, dy = y[i] - ym;
      sxy += dx * dy;
      sxx += dx * dx;
      syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
      scores[j] = 0.0;
      continue;
    }
    const double r2 = (sxy * sxy) / (sxx * syy);
    scores[j] = r2 >= 1.0 ? std::numeric_limits<double>::infinity()
                          : r2 / (1.0 - r2) * static_cast<double>(n - 2);
  }
  return scores;
}

std::vector<int> select_top_k(const std::vector<double>& scores, int k) {
  if (k < 1 || k > static_cast<int>(scores.size())) {
    throw PreprocessError("invalid selection count");
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[a] > scores[b];  // stable keeps lower index on ties
  });
  order.resize(k);
  return order;
}

void FeatureSelector::fit(const Matrix& train, const std::vector<double>& y,
                          int k, bool classification) {
  const auto scores =
      classification ? anova_f_scores(train, y) : f_regression_scores(train, y);
  kept = select_top_k(scores, k);
  std::sort(kept.begin(), kept.end());
}

Matrix FeatureSelector::apply(const Matrix& m) const {
  Matrix out(m.size(), std::vector<double>(kept.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) out[i][j] = m[i][kept[j]];
  }
  return out;
}

void UnitBoxMap::fit(const Matrix& train) {
  MinMaxScaler mm;
  mm.fit(train);
  mins = mm.mins;
  maxs = mm.maxs;
}

Matrix UnitBoxMap::apply(const Matrix& m) const {
  MinMaxScaler mm;
  mm.mins = mins;
  mm.maxs = maxs;
  return mm.apply(m, /*clip=*/true);
}

Matrix FittedTransform::apply(const Matrix& m) const {
  Matrix scaled = spec.scaler == Scaler::MinMax ? minmax.apply(m)
                                                : standard.apply(m);
  Matrix reduced = spec.reducer == Reducer::Pca ? pca.apply(scaled)
                                                : selector.apply(scaled);
  return unit_box.apply(reduced);
}

std::vector<double> FittedTransform::apply_row(
    const std::vector<double>& row) const {
  return apply(Matrix{row})[0];
}

FittedTransform fit_preprocess(const PreprocessSpec& spec, const Matrix& trainX,
                               const std::vector<double>& train_y,
                               bool classification) {
  if (trainX.empty()) throw PreprocessError("empty training matrix");
  if (spec.out_dims > static_cast<int>(trainX[0].size())) {
    throw PreprocessError("out_dims exceeds feature count");
  }
  FittedTransform ft;
  ft.spec = spec;
  Matrix scaled;
  if (spec.scaler == Scaler::MinMax) {
    ft.minmax.fit(trainX);
    scaled = ft.minmax.apply(trainX);
  } else {
    ft.standard.fit(trainX);
    scaled = ft.standard.apply(trainX);
  }
  Matrix reduced;
  if (spec.reducer == Reducer::Pca) {
    ft.pca.fit(scaled, spec.out_dims);
    reduced = ft.pca.apply(scaled);
  } else {
    ft.selector.fit(scaled, train_y, spec.out_dims, classification);
    reduced = ft.selector.apply(scaled);
  }
  ft.unit_box.fit(reduced);
  return ft;
}

std::pair<Matrix, Matrix> fit_apply_minmax(const Matrix& train,
                                           const Matrix& other) {
  MinMaxScaler s;
  s.fit(train);
  return {s.apply(train), s.apply(other)};
}

std::pair<Matrix, Matrix> fit_apply_standard(const Matrix& train,
                                             const Matrix& other) {
  StandardScaler s;
  s.fit(train);
  return {s.apply(train), s.apply(other)};
}

std::pair<Matrix, Matrix> fit_apply_pca(const Matrix& train,
                                        const Matrix& other, int k) {
  PcaReducer p;
  p.fit(train, k);
  return {p.apply(train), p.apply(other)};
}

}  // namespace qvl
