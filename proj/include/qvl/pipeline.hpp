#pragma once

#include "qvl/dataset.hpp"
#include "qvl/model.hpp"
#include "qvl/muse.hpp"

namespace qvl {

struct PipelineConfig {
  TaskKind task = TaskKind::Classification;
  int out_dims = 4;  // reduced feature count == qubit count == point dim
  double train_fraction = 0.8;
  int train_iterations = 100;
  std::uint64_t split_seed = 0;
  std::uint64_t train_seed = 0;
};

// The objective MUSE drives on a real dataset: split once, preprocess with
// the combo's scaler/reducer, tile the candidate point into initial ansatz
// weights, train, and score on the held-out split (accuracy or R^2).
ObjectiveFn make_learning_objective(const RawDataset& ds,
                                    const PipelineConfig& cfg);

// Single evaluation outside the search, returning the trained model.
struct PipelineEval {
  double score = 0.0;
  VariationalModel model;
};
PipelineEval evaluate_pipeline(const RawDataset& ds, const PipelineConfig& cfg,
                               const std::vector<double>& point,
                               const GridCombo& combo);

}  // namespace qvl
