#pragma once

#include <string>

#include "qvl/diagnostics.hpp"
#include "qvl/muse.hpp"
#include "qvl/pipeline.hpp"

namespace qvl {

struct RunConfig {
  TaskKind task = TaskKind::Classification;
  std::string dataset_path;
  std::uint64_t seed = 0;
  MuseHyper hyper;
  int n_trials = 2;
  int workers = 1;
  bool baseline = false;
  // -1 means per-task default: 4 dims / 100 iters for classification,
  // 2 dims / 10 iters for regression.
  int out_dims = -1;
  int train_iterations = -1;
  double train_fraction = 0.8;
  GridSpec grid;  // empty lists mean per-task defaults
  std::string out_path;

  int resolved_out_dims() const;
  int resolved_train_iterations() const;
  GridSpec resolved_grid() const;
};

struct RunRecord {
  RunConfig config;
  SearchOutcome best;
  std::vector<ComboResult> per_combo;
  double lowest_sc = 0.0;
  std::size_t total_evaluations = 0;
  SearchOutcome baseline_best;
  bool has_baseline = false;
  double wall_ms = 0.0;

  std::string to_json() const;  // ordered keys, lossless doubles
  static RunRecord from_json(const std::string& text);
  void save(const std::string& path) const;
  static RunRecord load(const std::string& path);

  // Equality ignores wall_ms.
  bool operator==(const RunRecord& other) const;
};

RunRecord cmd_search(const RunConfig& cfg);

// Writes the 5-row variant CSV; returns the reports.
std::vector<TraceReport> cmd_tracediff(const std::string& dataset_path,
                                       bool classification, int k,
                                       const std::string& out_path);

}  // namespace qvl
