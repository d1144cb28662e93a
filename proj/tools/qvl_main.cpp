#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qvl/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"MUSE workbench for variational quantum learners"};
  app.require_subcommand(1);

  qvl::RunConfig cfg;
  std::string task = "classify";

  auto* search = app.add_subcommand("search", "Grid-driven MUSE search");
  search->add_option("--task", task, "classify|regress")
      ->check(CLI::IsMember({"classify", "regress"}));
  search->add_option("--dataset", cfg.dataset_path, "CSV dataset path")
      ->required();
  search->add_option("--seed", cfg.seed, "RNG seed");
  search->add_option("--trials", cfg.n_trials, "grid trials");
  search->add_option("--depth", cfg.hyper.depth, "search depth");
  search->add_option("--epsilon", cfg.hyper.epsilon, "locality radius");
  search->add_option("--alpha", cfg.hyper.alpha, "same-score scale");
  search->add_option("--beta", cfg.hyper.beta, "worse-score scale");
  search->add_option("--workers", cfg.workers, "worker threads");
  search->add_flag("--baseline", cfg.baseline, "also run 2x-depth random search");
  search->add_option("--dims", cfg.out_dims, "reduced feature count");
  search->add_option("--iters", cfg.train_iterations, "training iterations");
  search->add_option("--fraction", cfg.train_fraction, "train fraction");
  search->add_option("--out", cfg.out_path, "run record output path (JSON)");

  std::string td_dataset, td_out;
  int td_k = 3;
  std::string td_task = "classify";
  auto* tracediff =
      app.add_subcommand("tracediff", "Scaler/reducer trace-difference report");
  tracediff->add_option("--dataset", td_dataset, "CSV dataset path")->required();
  tracediff->add_option("--k", td_k, "reduced dimensionality");
  tracediff->add_option("--task", td_task, "classify|regress")
      ->check(CLI::IsMember({"classify", "regress"}));
  tracediff->add_option("--out", td_out, "report CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (search->parsed()) {
      cfg.task = task == "classify" ? qvl::TaskKind::Classification
                                    : qvl::TaskKind::Regression;
      qvl::cmd_search(cfg);
    } else {
      const auto reports =
          qvl::cmd_tracediff(td_dataset, td_task == "classify", td_k, td_out);
      for (const auto& r : reports) {
        std::printf("%-12s %.12g\n", r.variant.c_str(), r.mean_trace_diff);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
