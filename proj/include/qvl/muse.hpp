#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qvl/preprocess.hpp"

namespace qvl {

// One grid combination: circuit repetitions and preprocessing choice.
struct GridCombo {
  int fm_reps = 1;
  int an_reps = 2;
  Scaler scaler = Scaler::MinMax;
  Reducer reducer = Reducer::FSelect;

  bool operator==(const GridCombo&) const = default;
};

std::string combo_label(const GridCombo& c);

struct SearchArgs {
  double epsilon = 0.02;
  double alpha = 0.9;
  double beta = 0.5;
  std::vector<double> upper;  // elementwise box bounds
  std::vector<double> lower;
  int depth = 3;
  GridCombo params;

  void validate() const;
};

struct TraceEntry {
  std::vector<double> point;
  double score = 0.0;
  std::string branch;  // seed | reflect | neighbor | alpha | beta | random
};

struct SearchOutcome {
  std::vector<double> best_pt;
  double best_sc = -std::numeric_limits<double>::infinity();
  GridCombo best_params;
  std::vector<TraceEntry> trace;
};

// Deterministic given (point, params); higher score is better.
using ObjectiveFn =
    std::function<double(const std::vector<double>&, const GridCombo&)>;

// Uniform draw on [lo, hi); injectable so tests can pin the epsilon draws.
using UniformFn = std::function<double(double lo, double hi)>;

UniformFn seeded_uniform(std::uint64_t seed);

struct ObjectiveError : std::runtime_error {
  std::vector<TraceEntry> partial_trace;

  ObjectiveError(const std::string& what, std::vector<TraceEntry> trace)
      : std::runtime_error(what), partial_trace(std::move(trace)) {}
};

std::vector<double> neighbor_point(const std::vector<double>& pt, double epsilon,
                                   const std::vector<double>& upper,
                                   const UniformFn& uniform);

std::vector<double> opposite_point(const std::vector<double>& pt, double epsilon,
                                   const std::vector<double>& upper,
                                   const std::vector<double>& lower,
                                   const UniformFn& uniform);

// Multi-locality recursive search. Evaluates the box reflection and an
// epsilon-neighbor of the incumbent each level; on a tie (resp. regression)
// of the incumbent score it probes alpha (resp. beta) times the incumbent,
// recursing only on improvement at the cost of an extra depth unit.
// Returned best_sc >= entry best_sc. When parallel_siblings is set the two
// sibling evaluations run concurrently; the trace is identical either way.
SearchOutcome muse_search(std::vector<double> best_pt, double best_sc,
                          SearchArgs args, const ObjectiveFn& objective,
                          const UniformFn& uniform,
                          bool parallel_siblings = false);

struct GridSpec {
  std::vector<std::pair<int, int>> feat_ans;        // (fm reps, ansatz reps)
  std::vector<std::pair<Scaler, Reducer>> sca_red;
  int n_trials = 2;

  static GridSpec defaults_classification();
  static GridSpec defaults_regression();
};

struct MuseHyper {
  double epsilon = 0.02;
  double alpha = 0.9;
  double beta = 0.5;
  int depth = 3;
};

struct ComboResult {
  GridCombo combo;
  SearchOutcome outcome;
  bool failed = false;
  std::string error;
};

struct DriverResult {
  SearchOutcome best;
  std::vector<ComboResult> per_combo;
  double lowest_sc = std::numeric_limits<double>::infinity();
  std::size_t total_evaluations = 0;
};

// Grid driver: per trial x combo, seed a uniform random point, score it once,
// then run the search. Deterministic under a fixed seed for any worker count.
DriverResult run_driver(const GridSpec& grid, const MuseHyper& hyper, int dims,
                        std::uint64_t seed, const ObjectiveFn& objective,
                        int workers = 1);

// Per combo, 2 x depth independent uniform points.
DriverResult random_search_baseline(const GridSpec& grid, int depth, int dims,
                                    std::uint64_t seed,
                                    const ObjectiveFn& objective,
                                    int workers = 1);

}  // namespace qvl
