#include "qvl/muse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <random>
#include <thread>

namespace qvl {

std::string combo_label(const GridCombo& c) {
  return "fm" + std::to_string(c.fm_reps) + "-an" + std::to_string(c.an_reps) +
         "-" + scaler_name(c.scaler) + "-" + reducer_name(c.reducer);
}

void SearchArgs::validate() const {
  if (upper.size() != lower.size() || upper.empty()) {
    throw std::invalid_argument("bound vectors mismatch");
  }
  double max_range = 0.0;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (lower[i] > upper[i]) throw std::invalid_argument("lower > upper");
    max_range = std::max(max_range, upper[i] - lower[i]);
  }
  if (!(epsilon > 0.0 && epsilon < max_range)) {
    throw std::invalid_argument("epsilon out of range");
  }
  if (!(alpha > 0.0 && alpha <= 1.0 && beta > 0.0 && beta < 1.0 &&
        beta < alpha)) {
    throw std::invalid_argument("need 0 < beta < alpha <= 1");
  }
}

UniformFn seeded_uniform(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](double lo, double hi) {
    const double u = static_cast<double>((*rng)() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };
}

std::vector<double> neighbor_point(const std::vector<double>& pt, double epsilon,
                                   const std::vector<double>& upper,
                                   const UniformFn& uniform) {
  const double eps_r = uniform(0.0, epsilon);
  std::vector<double> out(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) {
    out[i] = std::min(upper[i], pt[i] + eps_r);
  }
  return out;
}

std::vector<double> opposite_point(const std::vector<double>& pt, double epsilon,
                                   const std::vector<double>& upper,
                                   const std::vector<double>& lower,
                                   const UniformFn& uniform) {
  const double eps_l = uniform(0.0, epsilon);
  std::vector<double> out(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) {
    out[i] = std::min(std::max(upper[i] - pt[i], lower[i]) + eps_l, upper[i]);
  }
  return out;
}

namespace {

struct MuseState {
  const ObjectiveFn& objective;
  const UniformFn& uniform;
  bool parallel;
  std::vector<TraceEntry> trace;

  double evaluate(const std::vector<double>& pt, const GridCombo& params,
                  const char* branch) {
    double score;
    try {
      score = objective(pt, params);
    } catch (const std::exception& e) {
      throw ObjectiveError(e.what(), std::move(trace));
    }
    trace.push_back({pt, score, branch});
    return score;
  }
};

void muse_recurse(MuseState& st, std::vector<double>& best_pt, double& best_sc,
                  SearchArgs& args) {
  const double prev = best_sc;
  if (args.depth <= 0) return;
  args.depth -= 1;

  // Draws happen before either evaluation, so sibling parallelism cannot
  // perturb the stream.
  const auto lpt =
      opposite_point(best_pt, args.epsilon, args.upper, args.lower, st.uniform);
  const auto rpt =
      neighbor_point(best_pt, args.epsilon, args.upper, st.uniform);

  double lscore, rscore;
  if (st.parallel) {
    std::exception_ptr lerr, rerr;
    auto lfut = std::async(std::launch::async, [&]() -> double {
      return st.objective(lpt, args.params);
    });
    try {
      rscore = st.objective(rpt, args.params);
    } catch (...) {
      rerr = std::current_exception();
    }
    try {
      lscore = lfut.get();
    } catch (...) {
      lerr = std::current_exception();
    }
    for (auto err : {lerr, rerr}) {
      if (err) {
        try {
          std::rethrow_exception(err);
        } catch (const std::exception& e) {
          throw ObjectiveError(e.what(), std::move(st.trace));
        }
      }
    }
    st.trace.push_back({lpt, lscore, "reflect"});
    st.trace.push_back({rpt, rscore, "neighbor"});
  } else {
    lscore = st.evaluate(lpt, args.params, "reflect");
    rscore = st.evaluate(rpt, args.params, "neighbor");
  }

  if (lscore > best_sc) {
    best_pt = lpt;
    best_sc = lscore;
  }
  if (rscore > best_sc) {
    best_pt = rpt;
    best_sc = rscore;
  }

  if (prev < best_sc) {
    muse_recurse(st, best_pt, best_sc, args);
    return;
  }

  const double sibling_best = std::max(lscore, rscore);
  const bool tie = sibling_best == prev;
  std::vector<double> scaled(best_pt.size());
  const double factor = tie ? args.alpha : args.beta;
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = factor * best_pt[i];
  const double score =
      st.evaluate(scaled, args.params, tie ? "alpha" : "beta");
  if (score > best_sc) {
    best_pt = scaled;
    best_sc = score;
    args.depth -= 1;  // the locality hop double-charges the budget
    muse_recurse(st, best_pt, best_sc, args);
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt,
                          std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t z = mix64(seed ^ mix64(salt));
  z = mix64(z ^ mix64(a));
  z = mix64(z ^ mix64(b));
  return mix64(z ^ mix64(c));
}

struct ComboJob {
  GridCombo combo;
  std::uint64_t seed;
};

template <typename Fn>
std::vector<ComboResult> run_jobs(const std::vector<ComboJob>& jobs, Fn&& run_one,
                                  int workers) {
  std::vector<ComboResult> results(jobs.size());
  auto work = [&](std::size_t i) {
    results[i].combo = jobs[i].combo;
    try {
      results[i].outcome = run_one(jobs[i]);
    } catch (const ObjectiveError& e) {
      results[i].failed = true;
      results[i].error = e.what();
      results[i].outcome.trace = e.partial_trace;
      results[i].outcome.best_sc = -std::numeric_limits<double>::infinity();
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(workers, static_cast<int>(jobs.size()));
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size();
             i = next.fetch_add(1)) {
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return results;
}

DriverResult fold_results(std::vector<ComboResult> results) {
  DriverResult dr;
  for (auto& r : results) {
    for (const auto& t : r.outcome.trace) {
      dr.lowest_sc = std::min(dr.lowest_sc, t.score);
      ++dr.total_evaluations;
    }
    if (!r.failed && r.outcome.best_sc > dr.best.best_sc) {
      dr.best = r.outcome;
      dr.best.best_params = r.combo;
    }
  }
  dr.per_combo = std::move(results);
  return dr;
}

std::vector<ComboJob> grid_jobs(const GridSpec& grid, std::uint64_t seed,
                                std::uint64_t salt) {
  if (grid.feat_ans.empty() || grid.sca_red.empty() || grid.n_trials < 1) {
    throw std::invalid_argument("empty grid");
  }
  std::vector<ComboJob> jobs;
  for (int trial = 0; trial < grid.n_trials; ++trial) {
    for (std::size_t fa = 0; fa < grid.feat_ans.size(); ++fa) {
      for (std::size_t sr = 0; sr < grid.sca_red.size(); ++sr) {
        GridCombo combo{grid.feat_ans[fa].first, grid.feat_ans[fa].second,
                        grid.sca_red[sr].first, grid.sca_red[sr].second};
        jobs.push_back({combo, derive_seed(seed, salt, trial, fa, sr)});
      }
    }
  }
  return jobs;
}

}  // namespace

SearchOutcome muse_search(std::vector<double> best_pt, double best_sc,
                          SearchArgs args, const ObjectiveFn& objective,
                          const UniformFn& uniform, bool parallel_siblings) {
  args.validate();
  if (best_pt.size() != args.upper.size()) {
    throw std::invalid_argument("point dimension != bound dimension");
  }
  MuseState st{objective, uniform, parallel_siblings, {}};
  muse_recurse(st, best_pt, best_sc, args);
  SearchOutcome out;
  out.best_pt = std::move(best_pt);
  out.best_sc = best_sc;
  out.best_params = args.params;
  out.trace = std::move(st.trace);
  return out;
}

GridSpec GridSpec::defaults_classification() {
  return {{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}},
          {{Scaler::Std, Reducer::Pca},
           {Scaler::Std, Reducer::FSelect},
           {Scaler::MinMax, Reducer::Pca},
           {Scaler::MinMax, Reducer::FSelect}},
          2};
}

GridSpec GridSpec::defaults_regression() {
  return {{{1, 2}, {1, 3}, {2, 2}, {2, 3}},
          {{Scaler::Std, Reducer::Pca},
           {Scaler::Std, Reducer::FSelect},
           {Scaler::MinMax, Reducer::Pca},
           {Scaler::MinMax, Reducer::FSelect}},
          2};
}

DriverResult run_driver(const GridSpec& grid, const MuseHyper& hyper, int dims,
                        std::uint64_t seed, const ObjectiveFn& objective,
                        int workers) {
  if (dims < 1) throw std::invalid_argument("dims must be >= 1");
  const auto jobs = grid_jobs(grid, seed, /*salt=*/0x6d757365ULL);
  auto run_one = [&](const ComboJob& job) {
    auto uniform = seeded_uniform(job.seed);
    std::vector<double> pt(dims);
    for (auto& v : pt) v = uniform(0.0, 1.0);

    MuseState st{objective, uniform, workers > 1, {}};
    // Alg. 2 passes an uninitialized score into the search; seed it with one
    // evaluation of the random start instead.
    double sc = st.evaluate(pt, job.combo, "seed");
    SearchArgs args;
    args.epsilon = hyper.epsilon;
    args.alpha = hyper.alpha;
    args.beta = hyper.beta;
    args.depth = hyper.depth;
    args.upper.assign(dims, 1.0);
    args.lower.assign(dims, 0.0);
    args.params = job.combo;
    if (args.depth > 0) muse_recurse(st, pt, sc, args);

    SearchOutcome out;
    out.best_pt = std::move(pt);
    out.best_sc = sc;
    out.best_params = job.combo;
    out.trace = std::move(st.trace);
    return out;
  };
  return fold_results(run_jobs(jobs, run_one, workers));
}

DriverResult random_search_baseline(const GridSpec& grid, int depth, int dims,
                                    std::uint64_t seed,
                                    const ObjectiveFn& objective, int workers) {
  if (dims < 1 || depth < 1) throw std::invalid_argument("bad dims/depth");
  const auto jobs = grid_jobs(grid, seed, /*salt=*/0x72616e64ULL);
  auto run_one = [&](const ComboJob& job) {
    auto uniform = seeded_uniform(job.seed);
    MuseState st{objective, uniform, false, {}};
    SearchOutcome out;
    out.best_params = job.combo;
    for (int i = 0; i < 2 * depth; ++i) {
      std::vector<double> pt(dims);
      for (auto& v : pt) v = uniform(0.0, 1.0);
      const double sc = st.evaluate(pt, job.combo, "random");
      if (sc > out.best_sc) {
        out.best_sc = sc;
        out.best_pt = pt;
      }
    }
    out.trace = std::move(st.trace);
    return out;
  };
  return fold_results(run_jobs(jobs, run_one, workers));
}

}  // namespace qvl
