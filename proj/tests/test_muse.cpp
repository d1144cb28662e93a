#include <doctest.h>

#include <cmath>
#include <random>

#include "qvl/muse.hpp"

using namespace qvl;

namespace {

UniformFn zero_draws() {
  return [](double lo, double) { return lo; };
}

SearchArgs unit_args(int dims, int depth) {
  SearchArgs a;
  a.upper.assign(dims, 1.0);
  a.lower.assign(dims, 0.0);
  a.depth = depth;
  return a;
}

// Hill objective with its peak at `target`.
ObjectiveFn hill(double target) {
  return [target](const std::vector<double>& p, const GridCombo&) {
    return 1.0 - std::abs(p[0] - target);
  };
}

}  // namespace

TEST_CASE("neighbor and opposite point arithmetic") {
  auto fixed = [](double lo, double hi) {
    (void)lo;
    (void)hi;
    return 0.02;
  };
  CHECK(neighbor_point({0.7}, 0.05, {1.0}, fixed)[0] == doctest::Approx(0.72));
  CHECK(neighbor_point({1.0}, 0.05, {1.0}, fixed)[0] == doctest::Approx(1.0));

  CHECK(opposite_point({0.7}, 0.05, {1.0}, {0.0}, fixed)[0] ==
        doctest::Approx(0.32));
  CHECK(opposite_point({0.0}, 0.05, {1.0}, {0.0}, zero_draws())[0] ==
        doctest::Approx(1.0));

  std::mt19937_64 seed_rng(3);
  for (int i = 0; i < 200; ++i) {
    auto uniform = seeded_uniform(seed_rng());
    const double pt = uniform(0.0, 1.0);
    const double nb = neighbor_point({pt}, 0.1, {1.0}, uniform)[0];
    CHECK(nb >= pt);
    CHECK(nb <= std::min(1.0, pt + 0.1));
    const double op = opposite_point({pt}, 0.1, {1.0}, {0.0}, uniform)[0];
    CHECK(op >= 0.0);
    CHECK(op <= 1.0);
  }
}

TEST_CASE("depth zero returns the inputs with no evaluations") {
  int calls = 0;
  auto obj = [&](const std::vector<double>&, const GridCombo&) {
    ++calls;
    return 1.0;
  };
  const auto out =
      muse_search({0.5}, 0.6, unit_args(1, 0), obj, zero_draws());
  CHECK(calls == 0);
  CHECK(out.best_pt[0] == doctest::Approx(0.5));
  CHECK(out.best_sc == doctest::Approx(0.6));
  CHECK(out.trace.empty());
}

TEST_CASE("pinned-rng hand trace: tie branch probes alpha and stops") {
  int calls = 0;
  auto obj = [&](const std::vector<double>& p, const GridCombo& c) {
    ++calls;
    return hill(0.9)(p, c);
  };
  const auto out =
      muse_search({0.5}, 0.6, unit_args(1, 1), obj, zero_draws());
  CHECK(calls == 3);
  REQUIRE(out.trace.size() == 3);
  CHECK(out.trace[0].branch == "reflect");
  CHECK(out.trace[0].point[0] == doctest::Approx(0.5));
  CHECK(out.trace[1].branch == "neighbor");
  CHECK(out.trace[1].point[0] == doctest::Approx(0.5));
  CHECK(out.trace[2].branch == "alpha");
  CHECK(out.trace[2].point[0] == doctest::Approx(0.45));
  CHECK(out.trace[2].score == doctest::Approx(0.55));
  CHECK(out.best_sc == doctest::Approx(0.6));
  CHECK(out.best_pt[0] == doctest::Approx(0.5));
}

TEST_CASE("search improves toward the peak and never regresses") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto uniform = seeded_uniform(rng());
    const double start = uniform(0.0, 1.0);
    const auto obj = hill(uniform(0.0, 1.0));
    const double start_sc = obj({start}, {});
    const auto out =
        muse_search({start}, start_sc, unit_args(1, 4), obj, uniform);
    CHECK(out.best_sc >= start_sc);

    double running = start_sc;
    for (const auto& t : out.trace) {
      running = std::max(running, t.score);
      CHECK(t.point[0] >= 0.0);
      CHECK(t.point[0] <= 1.0);
    }
    CHECK(out.best_sc == doctest::Approx(running));
  }
}

TEST_CASE("evaluation count bounded by the depth budget") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int depth = 1 + static_cast<int>(rng() % 4);
    auto uniform = seeded_uniform(rng());
    std::vector<double> start{uniform(0.0, 1.0), uniform(0.0, 1.0)};
    const double target = uniform(0.0, 1.0);
    int calls = 0;
    auto obj = [&](const std::vector<double>& p, const GridCombo&) {
      ++calls;
      return 1.0 - std::abs(p[0] - target) - 0.5 * std::abs(p[1] - 0.5);
    };
    const double sc = obj(start, {});
    calls = 0;
    (void)muse_search(start, sc, unit_args(2, depth), obj, uniform);
    CHECK(calls <= 2 * depth + 1);
  }
}

TEST_CASE("objective failures carry the partial trace") {
  int calls = 0;
  auto obj = [&](const std::vector<double>&, const GridCombo&) -> double {
    if (++calls == 2) throw std::runtime_error("boom");
    return 0.1;
  };
  try {
    muse_search({0.5}, 0.0, unit_args(1, 2), obj, zero_draws());
    FAIL("expected ObjectiveError");
  } catch (const ObjectiveError& e) {
    CHECK(e.partial_trace.size() == 1);
    CHECK(std::string(e.what()) == "boom");
  }
}

TEST_CASE("driver folds the grid and is deterministic across workers") {
  GridSpec grid;
  grid.feat_ans = {{1, 2}, {2, 3}};
  grid.sca_red = {{Scaler::MinMax, Reducer::FSelect},
                  {Scaler::Std, Reducer::Pca}};
  grid.n_trials = 2;
  MuseHyper hyper;

  auto obj = [](const std::vector<double>& p, const GridCombo& c) {
    double bonus = c.scaler == Scaler::MinMax ? 0.1 : 0.0;
    return bonus + 1.0 - std::abs(p[0] - 0.8) - std::abs(p[1] - 0.2);
  };

  const auto serial = run_driver(grid, hyper, 2, 99, obj, 1);
  const auto parallel = run_driver(grid, hyper, 2, 99, obj, 4);

  CHECK(serial.best.best_sc == parallel.best.best_sc);
  CHECK(serial.best.best_pt == parallel.best.best_pt);
  CHECK(serial.best.best_params == parallel.best.best_params);
  REQUIRE(serial.per_combo.size() == parallel.per_combo.size());
  for (std::size_t i = 0; i < serial.per_combo.size(); ++i) {
    REQUIRE(serial.per_combo[i].outcome.trace.size() ==
            parallel.per_combo[i].outcome.trace.size());
    for (std::size_t t = 0; t < serial.per_combo[i].outcome.trace.size(); ++t) {
      CHECK(serial.per_combo[i].outcome.trace[t].point ==
            parallel.per_combo[i].outcome.trace[t].point);
      CHECK(serial.per_combo[i].outcome.trace[t].score ==
            parallel.per_combo[i].outcome.trace[t].score);
    }
  }

  // global best is the max over the per-combination outcomes
  double max_sc = -1e300;
  for (const auto& c : serial.per_combo) {
    max_sc = std::max(max_sc, c.outcome.best_sc);
  }
  CHECK(serial.best.best_sc == doctest::Approx(max_sc));
  CHECK(serial.best.best_params.scaler == Scaler::MinMax);
}

TEST_CASE("driver with a failing combination records and skips it") {
  GridSpec grid;
  grid.feat_ans = {{1, 2}};
  grid.sca_red = {{Scaler::MinMax, Reducer::FSelect},
                  {Scaler::Std, Reducer::Pca}};
  grid.n_trials = 1;
  auto obj = [](const std::vector<double>& p, const GridCombo& c) -> double {
    if (c.scaler == Scaler::Std) throw std::runtime_error("degenerate");
    return p[0];
  };
  const auto dr = run_driver(grid, MuseHyper{}, 1, 5, obj, 1);
  REQUIRE(dr.per_combo.size() == 2);
  CHECK(!dr.per_combo[0].failed);
  CHECK(dr.per_combo[1].failed);
  CHECK(dr.best.best_params.scaler == Scaler::MinMax);
}

TEST_CASE("driver scores the random start before searching") {
  GridSpec grid;
  grid.feat_ans = {{1, 2}};
  grid.sca_red = {{Scaler::MinMax, Reducer::FSelect}};
  grid.n_trials = 1;
  MuseHyper hyper;
  hyper.depth = 0;
  int calls = 0;
  auto obj = [&](const std::vector<double>&, const GridCombo&) {
    ++calls;
    return 0.5;
  };
  const auto dr = run_driver(grid, hyper, 1, 1, obj, 1);
  CHECK(calls == 1);
  CHECK(dr.total_evaluations == 1);
  CHECK(dr.best.trace[0].branch == "seed");
}

TEST_CASE("random baseline evaluates 2x depth points per combination") {
  GridSpec grid;
  grid.feat_ans = {{1, 2}, {1, 3}};
  grid.sca_red = {{Scaler::MinMax, Reducer::FSelect}};
  grid.n_trials = 1;
  int calls = 0;
  auto obj = [&](const std::vector<double>& p, const GridCombo&) {
    ++calls;
    return p[0];
  };
  const auto dr = random_search_baseline(grid, 3, 1, 42, obj, 1);
  CHECK(calls == 12);
  for (const auto& c : dr.per_combo) {
    CHECK(c.outcome.trace.size() == 6);
    for (const auto& t : c.outcome.trace) {
      CHECK(t.score <= c.outcome.best_sc);
    }
  }
  const auto dr2 = random_search_baseline(grid, 3, 1, 42, obj, 1);
  CHECK(dr.best.best_sc == dr2.best.best_sc);
  CHECK(dr.best.best_pt == dr2.best.best_pt);
}
