#include "qvl/run.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace qvl {

using ordered_json = nlohmann::ordered_json;

int RunConfig::resolved_out_dims() const {
  if (out_dims > 0) return out_dims;
  return task == TaskKind::Classification ? 4 : 2;
}

int RunConfig::resolved_train_iterations() const {
  if (train_iterations > 0) return train_iterations;
  return task == TaskKind::Classification ? 100 : 10;
}

GridSpec RunConfig::resolved_grid() const {
  GridSpec g = grid;
  if (g.feat_ans.empty() || g.sca_red.empty()) {
    const GridSpec d = task == TaskKind::Classification
                           ? GridSpec::defaults_classification()
                           : GridSpec::defaults_regression();
    if (g.feat_ans.empty()) g.feat_ans = d.feat_ans;
    if (g.sca_red.empty()) g.sca_red = d.sca_red;
  }
  g.n_trials = n_trials;
  return g;
}

namespace {

Scaler scaler_from(const std::string& s) {
  if (s == "std") return Scaler::Std;
  if (s == "mm") return Scaler::MinMax;
  throw std::invalid_argument("unknown scaler '" + s + "'");
}

Reducer reducer_from(const std::string& s) {
  if (s == "pca") return Reducer::Pca;
  if (s == "f") return Reducer::FSelect;
  throw std::invalid_argument("unknown reducer '" + s + "'");
}

// JSON has no +-inf; failed combos carry -inf scores, stored as null.
ordered_json score_to_json(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double score_from_json(const ordered_json& j, double non_finite) {
  return j.is_null() ? non_finite : j.get<double>();
}

ordered_json combo_to_json(const GridCombo& c) {
  return {{"fm_reps", c.fm_reps},
          {"an_reps", c.an_reps},
          {"scaler", scaler_name(c.scaler)},
          {"reducer", reducer_name(c.reducer)}};
}

GridCombo combo_from_json(const ordered_json& j) {
  return {j.at("fm_reps").get<int>(), j.at("an_reps").get<int>(),
          scaler_from(j.at("scaler").get<std::string>()),
          reducer_from(j.at("reducer").get<std::string>())};
}

ordered_json trace_to_json(const std::vector<TraceEntry>& trace) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : trace) {
    arr.push_back(
        {{"point", t.point}, {"score", t.score}, {"branch", t.branch}});
  }
  return arr;
}

std::vector<TraceEntry> trace_from_json(const ordered_json& arr) {
  std::vector<TraceEntry> trace;
  for (const auto& j : arr) {
    trace.push_back({j.at("point").get<std::vector<double>>(),
                     j.at("score").get<double>(),
                     j.at("branch").get<std::string>()});
  }
  return trace;
}

ordered_json outcome_to_json(const SearchOutcome& o) {
  return {{"point", o.best_pt},
          {"score", score_to_json(o.best_sc)},
          {"params", combo_to_json(o.best_params)},
          {"trace", trace_to_json(o.trace)}};
}

SearchOutcome outcome_from_json(const ordered_json& j) {
  SearchOutcome o;
  o.best_pt = j.at("point").get<std::vector<double>>();
  o.best_sc = score_from_json(j.at("score"), -std::numeric_limits<double>::infinity());
  o.best_params = combo_from_json(j.at("params"));
  o.trace = trace_from_json(j.at("trace"));
  return o;
}

ordered_json config_to_json(const RunConfig& c) {
  ordered_json feat_ans = ordered_json::array();
  for (const auto& [f, a] : c.grid.feat_ans) feat_ans.push_back({f, a});
  ordered_json sca_red = ordered_json::array();
  for (const auto& [s, r] : c.grid.sca_red) {
    sca_red.push_back({scaler_name(s), reducer_name(r)});
  }
  return {{"task", c.task == TaskKind::Classification ? "classify" : "regress"},
          {"dataset", c.dataset_path},
          {"seed", c.seed},
          {"epsilon", c.hyper.epsilon},
          {"alpha", c.hyper.alpha},
          {"beta", c.hyper.beta},
          {"depth", c.hyper.depth},
          {"trials", c.n_trials},
          {"workers", c.workers},
          {"baseline", c.baseline},
          {"out_dims", c.out_dims},
          {"train_iterations", c.train_iterations},
          {"train_fraction", c.train_fraction},
          {"feat_ans", feat_ans},
          {"sca_red", sca_red},
          {"out", c.out_path}};
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig c;
  c.task = j.at("task").get<std::string>() == "classify"
               ? TaskKind::Classification
               : TaskKind::Regression;
  c.dataset_path = j.at("dataset").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.hyper.epsilon = j.at("epsilon").get<double>();
  c.hyper.alpha = j.at("alpha").get<double>();
  c.hyper.beta = j.at("beta").get<double>();
  c.hyper.depth = j.at("depth").get<int>();
  c.n_trials = j.at("trials").get<int>();
  c.workers = j.at("workers").get<int>();
  c.baseline = j.at("baseline").get<bool>();
  c.out_dims = j.at("out_dims").get<int>();
  c.train_iterations = j.at("train_iterations").get<int>();
  c.train_fraction = j.at("train_fraction").get<double>();
  for (const auto& fa : j.at("feat_ans")) {
    c.grid.feat_ans.emplace_back(fa.at(0).get<int>(), fa.at(1).get<int>());
  }
  for (const auto& sr : j.at("sca_red")) {
    c.grid.sca_red.emplace_back(scaler_from(sr.at(0).get<std::string>()),
                                reducer_from(sr.at(1).get<std::string>()));
  }
  c.out_path = j.at("out").get<std::string>();
  return c;
}

ordered_json record_to_json(const RunRecord& r) {
  ordered_json j;
  j["config"] = config_to_json(r.config);
  j["best"] = outcome_to_json(r.best);
  ordered_json combos = ordered_json::array();
  for (const auto& c : r.per_combo) {
    combos.push_back({{"params", combo_to_json(c.combo)},
                      {"best_score", score_to_json(c.outcome.best_sc)},
                      {"best_point", c.outcome.best_pt},
                      {"failed", c.failed},
                      {"error", c.error},
                      {"trace", trace_to_json(c.outcome.trace)}});
  }
  j["per_combo"] = combos;
  j["lowest_score"] = score_to_json(r.lowest_sc);
  j["total_evaluations"] = r.total_evaluations;
  if (r.has_baseline) j["baseline"] = outcome_to_json(r.baseline_best);
  j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace

std::string RunRecord::to_json() const { return record_to_json(*this).dump(2); }

RunRecord RunRecord::from_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  RunRecord r;
  r.config = config_from_json(j.at("config"));
  r.best = outcome_from_json(j.at("best"));
  for (const auto& c : j.at("per_combo")) {
    ComboResult cr;
    cr.combo = combo_from_json(c.at("params"));
    cr.outcome.best_sc = score_from_json(c.at("best_score"), -std::numeric_limits<double>::infinity());
    cr.outcome.best_pt = c.at("best_point").get<std::vector<double>>();
    cr.failed = c.at("failed").get<bool>();
    cr.error = c.at("error").get<std::string>();
    cr.outcome.trace = trace_from_json(c.at("trace"));
    r.per_combo.push_back(std::move(cr));
  }
  r.lowest_sc = score_from_json(j.at("lowest_score"), std::numeric_limits<double>::infinity());
  r.total_evaluations = j.at("total_evaluations").get<std::size_t>();
  if (j.contains("baseline")) {
    r.has_baseline = true;
    r.baseline_best = outcome_from_json(j.at("baseline"));
  }
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

void RunRecord::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << to_json() << "\n";
  if (!out) throw std::runtime_error("failed writing " + path);
}

RunRecord RunRecord::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

bool RunRecord::operator==(const RunRecord& other) const {
  auto a = record_to_json(*this);
  auto b = record_to_json(other);
  a["wall_ms"] = 0.0;
  b["wall_ms"] = 0.0;
  return a == b;
}

RunRecord cmd_search(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const bool classify = cfg.task == TaskKind::Classification;
  const RawDataset ds = load_csv(cfg.dataset_path, classify);

  PipelineConfig pc;
  pc.task = cfg.task;
  pc.out_dims = cfg.resolved_out_dims();
  pc.train_fraction = cfg.train_fraction;
  pc.train_iterations = cfg.resolved_train_iterations();
  pc.split_seed = cfg.seed;
  pc.train_seed = cfg.seed;
  const ObjectiveFn objective = make_learning_objective(ds, pc);

  const GridSpec grid = cfg.resolved_grid();
  DriverResult dr =
      run_driver(grid, cfg.hyper, pc.out_dims, cfg.seed, objective, cfg.workers);

  RunRecord rec;
  rec.config = cfg;
  rec.config.grid = grid;
  rec.best = dr.best;
  rec.per_combo = std::move(dr.per_combo);
  rec.lowest_sc = dr.lowest_sc;
  rec.total_evaluations = dr.total_evaluations;

  if (cfg.baseline) {
    DriverResult base = random_search_baseline(grid, cfg.hyper.depth,
                                               pc.out_dims, cfg.seed, objective,
                                               cfg.workers);
    rec.has_baseline = true;
    rec.baseline_best = base.best;
  }

  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  if (!cfg.out_path.empty()) rec.save(cfg.out_path);

  std::cout << "best init point [";
  for (std::size_t i = 0; i < rec.best.best_pt.size(); ++i) {
    std::cout << (i ? ", " : "") << rec.best.best_pt[i];
  }
  std::cout << "]\n";
  std::cout << "best score " << rec.best.best_sc << "\n";
  std::cout << "best args " << combo_label(rec.best.best_params) << "\n";
  return rec;
}

std::vector<TraceReport> cmd_tracediff(const std::string& dataset_path,
                                       bool classification, int k,
                                       const std::string& out_path) {
  const RawDataset ds = load_csv(dataset_path, classification);
  if (k > 10) throw CapacityError("tracediff limited to k <= 10");
  const auto reports = tracediff_study(ds, k, classification);
  if (!out_path.empty()) write_tracediff_csv(out_path, reports);
  return reports;
}

}  // namespace qvl
