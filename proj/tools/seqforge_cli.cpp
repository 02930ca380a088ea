// Command-line front end: single-sequence design runs, benchmark plans,
// paired strategy/algorithm comparisons and majorizer diagnostics.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqforge/seqforge.hpp"

namespace fs = std::filesystem;

namespace {

int run_design(std::size_t length, const std::string& init,
               const std::string& algo, const std::string& strategy,
               bool accel, double tol, std::size_t max_iter,
               std::uint64_t seed, const std::string& out_dir) {
  using namespace seqforge;
  const InitKind kind = init_kind_from_string(init);
  const Sequence z0 = make_initialization(kind, length, seed);

  AlgoSpec spec;
  spec.algorithm = algorithm_from_string(algo);
  spec.strategy = bound_strategy_from_string(strategy);
  spec.accelerate = accel;
  const SolverConfig cfg = spec.config(tol, seed, max_iter);

  const SolverResult res = solve(z0, cfg);

  fs::create_directories(out_dir);
  const std::string base =
      (fs::path(out_dir) /
       (std::string("design_P") + std::to_string(length) + "_" + init + "_" +
        (spec.algorithm == Algorithm::FISL
             ? spec.label() + "-" + spec.strategy_label()
             : spec.label())))
          .string();
  {
    std::ofstream out(base + ".trace.csv");
    write_trace_csv(out, res.trace);
  }
  save_sequence(base + ".seq.txt", res.sequence);
  {
    std::ofstream out(base + ".acf.csv");
    write_profile_csv(out, autocorrelation_fft(res.sequence));
  }

  std::printf("%s P=%zu init=%s iterations=%zu final_isl=%.10g final_psl=%.10g stop=%s\n",
              spec.label().c_str(), length, init.c_str(),
              res.trace.iterations(), res.final_isl, res.final_psl,
              to_string(res.trace.stop_reason));
  std::printf("artifacts: %s.{trace.csv,seq.txt,acf.csv}\n", base.c_str());
  return 0;
}

int run_bench(const std::string& plan_path, const std::string& out_dir,
              std::size_t workers) {
  using namespace seqforge;
  const ExperimentPlan plan =
      plan_path.empty() ? ExperimentPlan::desk_default() : load_plan(plan_path);
  const ExperimentReport report = run_plan(plan, out_dir, workers);
  std::printf("bench: %zu runs -> %s/summary.{json,csv}\n",
              report.records.size(), out_dir.c_str());
  return 0;
}

int run_compare_strategies(std::size_t length, const std::string& init,
                           std::uint64_t seed, double tol,
                           const std::string& out_dir) {
  using namespace seqforge;
  const StrategyComparison cmp =
      compare_strategies(length, init_kind_from_string(init), seed, tol);
  fs::create_directories(out_dir);
  const auto path = fs::path(out_dir) / "compare_strategies.csv";
  {
    std::ofstream out(path);
    write_strategy_csv(out, cmp);
  }
  write_strategy_csv(std::cout, cmp);
  std::printf("max relative final-ISL spread: %.3g (written to %s)\n",
              cmp.max_relative_spread, path.string().c_str());
  return 0;
}

int run_compare_algos(std::size_t length, const std::string& init,
                      std::uint64_t seed, double tol,
                      const std::string& out_dir) {
  using namespace seqforge;
  const auto rows =
      compare_algorithms(length, init_kind_from_string(init), seed, tol);
  fs::create_directories(out_dir);
  const auto path = fs::path(out_dir) / "compare_algos.csv";
  {
    std::ofstream out(path);
    write_algorithm_csv(out, rows);
  }
  write_algorithm_csv(std::cout, rows);
  std::printf("written to %s\n", path.string().c_str());
  return 0;
}

int run_bounds(const std::string& sequence_file) {
  using namespace seqforge;
  const Sequence z = load_sequence(sequence_file);
  write_bounds_csv(std::cout, bounds_table(z));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqforge: phase-only sequence design by ISL minimization"};
  app.require_subcommand(1);

  // design
  std::size_t length = 100;
  std::string init = "random";
  std::string algo = "fisl";
  std::string strategy = "befft";
  bool accel = false;
  double tol = 1e-5;
  std::size_t max_iter = 100000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  auto* design = app.add_subcommand("design", "run one solver on one sequence");
  design->add_option("--length", length, "sequence length P")->required();
  design->add_option("--init", init, "random|golomb|frank");
  design->add_option("--algo", algo, "fisl|can|misl|islnew");
  design->add_option("--strategy", strategy, "tr|ei|bei|befft (fisl only)");
  design->add_flag("--accel", accel, "SQUAREM acceleration (misl/islnew)");
  design->add_option("--tol", tol, "convergence tolerance");
  design->add_option("--max-iter", max_iter, "iteration cap");
  design->add_option("--seed", seed, "seed for random initialization");
  design->add_option("--out", out_dir, "output directory");

  // bench
  std::string plan_path;
  std::size_t workers = 1;
  auto* bench = app.add_subcommand("bench", "run an experiment plan");
  bench->add_option("--plan", plan_path, "plan JSON (default: desk-scale plan)");
  bench->add_option("--out", out_dir, "output directory");
  bench->add_option("--workers", workers, "parallel cell workers");

  // compare-strategies
  auto* cs = app.add_subcommand("compare-strategies",
                                "FISL under all four majorizer strategies");
  cs->add_option("--length", length, "sequence length P")->required();
  cs->add_option("--init", init, "random|golomb|frank");
  cs->add_option("--seed", seed, "seed for random initialization");
  cs->add_option("--tol", tol, "convergence tolerance");
  cs->add_option("--out", out_dir, "output directory");

  // compare-algos
  auto* ca = app.add_subcommand("compare-algos",
                                "all algorithms from one starting sequence");
  ca->add_option("--length", length, "sequence length P")->required();
  ca->add_option("--init", init, "random|golomb|frank");
  ca->add_option("--seed", seed, "seed for random initialization");
  ca->add_option("--tol", tol, "convergence tolerance");
  ca->add_option("--out", out_dir, "output directory");

  // bounds
  std::string sequence_file;
  auto* bounds = app.add_subcommand("bounds",
                                    "majorizer constants vs dense eigenvalue");
  bounds->add_option("--sequence", sequence_file, "sequence file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (design->parsed())
      return run_design(length, init, algo, strategy, accel, tol, max_iter,
                        seed, out_dir);
    if (bench->parsed()) return run_bench(plan_path, out_dir, workers);
    if (cs->parsed()) return run_compare_strategies(length, init, seed, tol, out_dir);
    if (ca->parsed()) return run_compare_algos(length, init, seed, tol, out_dir);
    if (bounds->parsed()) return run_bounds(sequence_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
