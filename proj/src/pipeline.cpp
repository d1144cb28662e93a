#include "qvl/pipeline.hpp"

#include <memory>

namespace qvl {

PipelineEval evaluate_pipeline(const RawDataset& ds, const PipelineConfig& cfg,
                               const std::vector<double>& point,
                               const GridCombo& combo) {
  const bool classify = cfg.task == TaskKind::Classification;
  const SplitResult split =
      split_train_test(ds, cfg.train_fraction, cfg.split_seed, classify);

  const PreprocessSpec spec{combo.scaler, combo.reducer, cfg.out_dims};
  const FittedTransform ft =
      fit_preprocess(spec, split.train.X, split.train.y, classify);
  const Matrix train_X = ft.apply(split.train.X);
  const Matrix test_X = ft.apply(split.test.X);

  VariationalModel m;
  m.fm = FeatureMapSpec{cfg.out_dims, combo.fm_reps};
  m.an = AnsatzSpec{cfg.out_dims, combo.an_reps};
  m.weights = tile_point(point, m.an.parameter_count());
  const TrainConfig tc{cfg.train_iterations, cfg.train_seed};

  PipelineEval res;
  if (classify) {
    m.task = TaskKind::Classification;
    m.n_classes = ds.n_classes();
    res.model = train_classifier(m, train_X, split.train.y, tc);
    std::vector<double> pred;
    pred.reserve(test_X.size());
    for (const auto& x : test_X) {
      pred.push_back(predict_class(res.model, x));
    }
    res.score = accuracy(pred, split.test.y);
  } else {
    m.task = TaskKind::Regression;
    m.output_map = fit_output_map(split.train.y);
    res.model = train_regressor(m, train_X, split.train.y, tc);
    std::vector<double> pred;
    pred.reserve(test_X.size());
    for (const auto& x : test_X) {
      pred.push_back(forward_regress(res.model, x));
    }
    res.score = r2_score(pred, split.test.y);
  }
  return res;
}

ObjectiveFn make_learning_objective(const RawDataset& ds,
                                    const PipelineConfig& cfg) {
  auto shared_ds = std::make_shared<RawDataset>(ds);
  return [shared_ds, cfg](const std::vector<double>& pt,
                          const GridCombo& combo) {
    return evaluate_pipeline(*shared_ds, cfg, pt, combo).score;
  };
}

}  // namespace qvl
