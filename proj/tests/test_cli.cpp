#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qvl/dataset.hpp"
#include "qvl/run.hpp"

using namespace qvl;

#ifndef QVL_DATA_DIR
#error "QVL_DATA_DIR must point at the bundled datasets"
#endif

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path("qvl_test_" + name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv loading of a small labeled file") {
  TempFile f("small.csv",
             "a,b,label\n"
             "1.0,2.0,cat\n"
             "3.5,-1.0,dog\n"
             "0.0,0.25,cat\n");
  const auto ds = load_csv(f.path, true);
  CHECK(ds.n_samples() == 3);
  CHECK(ds.n_features() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.class_names == std::vector<std::string>{"cat", "dog"});
  CHECK(ds.y == std::vector<double>{0.0, 1.0, 0.0});
  CHECK(ds.X[1][0] == doctest::Approx(3.5));
  CHECK(ds.X[2][1] == doctest::Approx(0.25));
}

TEST_CASE("csv loading of a regression target") {
  TempFile f("reg.csv",
             "x,target\n"
             "0.1,1.5\n"
             "0.9,-0.5\n");
  const auto ds = load_csv(f.path, false);
  CHECK(ds.class_names.empty());
  CHECK(ds.y == std::vector<double>{1.5, -0.5});
}

TEST_CASE("csv errors carry context") {
  CHECK_THROWS_AS(load_csv("no_such_file.csv", true), CsvError);

  TempFile empty("empty.csv", "");
  CHECK_THROWS_AS(load_csv(empty.path, true), CsvError);

  TempFile header_only("header.csv", "a,b,label\n");
  CHECK_THROWS_AS(load_csv(header_only.path, true), CsvError);

  TempFile ragged("ragged.csv", "a,b,label\n1.0,2.0,x\n1.0,y\n");
  try {
    load_csv(ragged.path, true);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  TempFile bad_num("badnum.csv", "a,label\n1.0,x\noops,y\n");
  try {
    load_csv(bad_num.path, true);
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("a") != std::string::npos);
  }

  TempFile bad_target("badtarget.csv", "x,target\n0.5,high\n");
  CHECK_THROWS_AS(load_csv(bad_target.path, false), CsvError);
}

TEST_CASE("bundled iris fixture loads") {
  const auto ds = load_csv(std::string(QVL_DATA_DIR) + "/iris.csv", true);
  CHECK(ds.n_samples() == 150);
  CHECK(ds.n_features() == 4);
  CHECK(ds.class_names.size() == 3);
}

TEST_CASE("run records survive a json round trip") {
  RunRecord rec;
  rec.config.task = TaskKind::Regression;
  rec.config.dataset_path = "data/synth_linear.csv";
  rec.config.seed = 123;
  rec.config.hyper.depth = 2;
  rec.config.out_dims = 2;
  rec.best.best_pt = {0.25, 0.75};
  rec.best.best_sc = 0.5;
  rec.best.best_params = {1, 3, Scaler::Std, Reducer::Pca};
  rec.best.trace = {{{0.1, 0.2}, 0.3, "seed"}, {{0.25, 0.75}, 0.5, "reflect"}};
  rec.per_combo.push_back({rec.best.best_params, rec.best, false, ""});
  ComboResult failed;
  failed.combo = {2, 3, Scaler::MinMax, Reducer::FSelect};
  failed.failed = true;
  failed.error = "objective exploded";
  rec.per_combo.push_back(failed);
  rec.lowest_sc = 0.3;
  rec.total_evaluations = 2;
  rec.wall_ms = 17.0;

  const auto text = rec.to_json();
  auto back = RunRecord::from_json(text);
  CHECK(back == rec);
  back.wall_ms = 99.0;
  CHECK(back == rec);  // equality ignores wall time

  // non-finite combo scores map through null without loss of meaning
  CHECK(std::isinf(back.per_combo[1].outcome.best_sc));

  TempFile f("record.json", "");
  rec.save(f.path);
  CHECK(RunRecord::load(f.path) == rec);
}

TEST_CASE("tracediff command writes one row per variant") {
  const std::string out = "qvl_test_tracediff.csv";
  const auto reports = cmd_tracediff(std::string(QVL_DATA_DIR) + "/iris.csv",
                                     true, 3, out);
  CHECK(reports.size() == 5);

  std::ifstream in(out);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "variant,mean_trace_diff");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 5);
  std::remove(out.c_str());
}
