#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvl {

using Matrix = std::vector<std::vector<double>>;  // sample-major rows

struct RawDataset {
  Matrix X;
  std::vector<double> y;
  std::vector<std::string> feature_names;
  // For classification targets: label text in first-appearance order,
  // y holds the mapped index. Empty for regression.
  std::vector<std::string> class_names;

  std::size_t n_samples() const { return X.size(); }
  std::size_t n_features() const { return X.empty() ? 0 : X[0].size(); }
  int n_classes() const { return static_cast<int>(class_names.size()); }
};

enum class Scaler { Std, MinMax };
enum class Reducer { Pca, FSelect };

const char* scaler_name(Scaler s);
const char* reducer_name(Reducer r);

struct PreprocessSpec {
  Scaler scaler = Scaler::MinMax;
  Reducer reducer = Reducer::FSelect;
  int out_dims = 4;
};

struct PreprocessError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SplitResult {
  RawDataset train;
  RawDataset test;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
};

// Deterministic shuffled split; stratified per class when requested.
SplitResult split_train_test(const RawDataset& ds, double fraction,
                             std::uint64_t seed, bool stratify = false);

// Affine map of each train column onto [0,1]; other data mapped with the
// train statistics and clipped into [0,1]. Constant columns map to 0.
struct MinMaxScaler {
  std::vector<double> mins, maxs;

  void fit(const Matrix& train);
  Matrix apply(const Matrix& m, bool clip = true) const;
};

// Per-feature (x - mean) / stddev with population (divide-by-n) variance;
// zero-stddev columns map to 0.
struct StandardScaler {
  std::vector<double> means, stds;

  void fit(const Matrix& train);
  Matrix apply(const Matrix& m) const;
};

struct PcaReducer {
  std::vector<double> means;
  Matrix components;  // k rows of length d, eigenvalues descending
  std::vector<double> explained_variance;

  void fit(const Matrix& train, int k);
  Matrix apply(const Matrix& m) const;
  // Inverse projection back to the original (centered removed) space.
  Matrix unproject(const Matrix& reduced) const;
};

// One-way ANOVA F statistic per feature for integer class labels.
std::vector<double> anova_f_scores(const Matrix& X,
                                   const std::vector<double>& y);

// Univariate linear-regression F statistic per feature (continuous target).
std::vector<double> f_regression_scores(const Matrix& X,
                                        const std::vector<double>& y);

// Top-k indices by descending score, ties broken by lower index.
std::vector<int> select_top_k(const std::vector<double>& scores, int k);

// Keeps a fixed index set, emitted in ascending index order.
struct FeatureSelector {
  std::vector<int> kept;

  void fit(const Matrix& train, const std::vector<double>& y, int k,
           bool classification);
  Matrix apply(const Matrix& m) const;
};

// Final affine remap of each (possibly reduced) column onto [0,1] based on
// train min/max, with clipping. Feeds the angle encoder, whose search box
// is the unit cube.
struct UnitBoxMap {
  std::vector<double> mins, maxs;

  void fit(const Matrix& train);
  Matrix apply(const Matrix& m) const;
};

// Scaler -> reducer -> unit-box remap, fitted on train data only.
struct FittedTransform {
  PreprocessSpec spec;
  MinMaxScaler minmax;
  StandardScaler standard;
  PcaReducer pca;
  FeatureSelector selector;
  UnitBoxMap unit_box;

  Matrix apply(const Matrix& m) const;
  std::vector<double> apply_row(const std::vector<double>& row) const;
};

FittedTransform fit_preprocess(const PreprocessSpec& spec, const Matrix& trainX,
                               const std::vector<double>& train_y,
                               bool classification);

// Convenience pairs matching the fit-on-train / apply-to-both contract.
std::pair<Matrix, Matrix> fit_apply_minmax(const Matrix& train,
                                           const Matrix& other);
std::pair<Matrix, Matrix> fit_apply_standard(const Matrix& train,
                                             const Matrix& other);
std::pair<Matrix, Matrix> fit_apply_pca(const Matrix& train,
                                        const Matrix& other, int k);

}  // namespace qvl
