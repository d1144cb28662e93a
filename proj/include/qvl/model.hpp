#pragma once

#include <cstdint>
#include <vector>

#include "qvl/circuits.hpp"
#include "qvl/preprocess.hpp"

namespace qvl {

enum class TaskKind { Classification, Regression };

// Affine map applied to the raw [-1,1] parity expectation for regression.
struct OutputMap {
  double scale = 1.0;
  double offset = 0.0;
};

struct VariationalModel {
  FeatureMapSpec fm;
  AnsatzSpec an;
  WeightVector weights;
  TaskKind task = TaskKind::Classification;
  int n_classes = 2;
  OutputMap output_map;
};

struct TrainConfig {
  int max_iterations = 100;  // objective-evaluation budget (classification)
                             // or outer iterations (regression)
  std::uint64_t seed = 0;
};

struct ModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Repeats the entries of pt cyclically until the requested length.
WeightVector tile_point(const std::vector<double>& pt, int length);

// Maps [-1,1] onto [min(y), max(y)].
OutputMap fit_output_map(const std::vector<double>& y);

// Class c collects the probability of all bitstrings with
// popcount(b) mod n_classes == c.
std::vector<double> forward_classify(const VariationalModel& m,
                                     const std::vector<double>& x);
int predict_class(const VariationalModel& m, const std::vector<double>& x);

double raw_expectation(const VariationalModel& m, const std::vector<double>& x);
double forward_regress(const VariationalModel& m, const std::vector<double>& x);

double cross_entropy_loss(const VariationalModel& m, const Matrix& X,
                          const std::vector<double>& y);
double mse_loss(const VariationalModel& m, const Matrix& X,
                const std::vector<double>& y);

// d(mse)/d(weights[index]) via exact +-pi/2 shifts of the RY parameter.
double parameter_shift_gradient(const VariationalModel& m, const Matrix& X,
                                const std::vector<double>& y, int index);
std::vector<double> parameter_shift_gradient_all(const VariationalModel& m,
                                                 const Matrix& X,
                                                 const std::vector<double>& y);

// Derivative-free bounded search with a strict evaluation budget; returns
// the best weights observed.
VariationalModel train_classifier(VariationalModel m, const Matrix& X,
                                  const std::vector<double>& y,
                                  const TrainConfig& cfg);

// Bounded quasi-Newton descent on the mse with parameter-shift gradients.
VariationalModel train_regressor(VariationalModel m, const Matrix& X,
                                 const std::vector<double>& y,
                                 const TrainConfig& cfg);

double accuracy(const std::vector<double>& pred, const std::vector<double>& truth);
double r2_score(const std::vector<double>& pred, const std::vector<double>& truth);

}  // namespace qvl
