#ifndef SEQFORGE_HARNESS_HPP_
#define SEQFORGE_HARNESS_HPP_

// Experiment runner: fans a plan out over (length, initialization, trial)
// cells, feeds the identical starting sequence to every algorithm in a
// cell, and writes machine-readable traces, sequences, autocorrelations
// and summaries.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seqforge/dense.hpp"
#include "seqforge/errors.hpp"
#include "seqforge/solvers.hpp"

namespace seqforge {

enum class InitKind { Random, Golomb, Frank };

inline const char* to_string(InitKind k) {
  switch (k) {
    case InitKind::Random: return "random";
    case InitKind::Golomb: return "golomb";
    case InitKind::Frank: return "frank";
  }
  return "?";
}

inline InitKind init_kind_from_string(const std::string& name) {
  if (name == "random") return InitKind::Random;
  if (name == "golomb") return InitKind::Golomb;
  if (name == "frank") return InitKind::Frank;
  throw PreconditionError("unknown initialization: " + name);
}

inline Sequence make_initialization(InitKind kind, std::size_t P,
                                    std::uint64_t seed) {
  switch (kind) {
    case InitKind::Random: return random_sequence(P, seed);
    case InitKind::Golomb: return golomb_sequence(P);
    case InitKind::Frank: return frank_sequence(P);
  }
  throw PreconditionError("make_initialization: unknown kind");
}

/// One algorithm entry of a plan: the algorithm, its majorizer strategy
/// (FISL only) and the acceleration flag (MISL / ISL-NEW only).
struct AlgoSpec {
  Algorithm algorithm = Algorithm::FISL;
  BoundStrategy strategy = BoundStrategy::BEFFT;
  bool accelerate = false;

  /// Label used in file names and the "algorithm" report column:
  /// fisl, can, misl, acc-misl, islnew, acc-islnew.
  std::string label() const {
    std::string name = to_string(algorithm);
    if (accelerate &&
        (algorithm == Algorithm::MISL || algorithm == Algorithm::ISL_NEW))
      name = "acc-" + name;
    return name;
  }

  /// The "strategy" report column; empty for non-FISL algorithms.
  std::string strategy_label() const {
    return algorithm == Algorithm::FISL ? to_string(strategy) : "";
  }

  SolverConfig config(double tolerance, std::uint64_t seed,
                      std::size_t max_iterations = 100000) const {
    SolverConfig cfg;
    cfg.algorithm = algorithm;
    cfg.bound_strategy = strategy;
    cfg.accelerate = accelerate;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iterations;
    cfg.seed = seed;
    return cfg;
  }
};

struct ExperimentPlan {
  std::vector<std::size_t> lengths{100, 225, 400, 625, 900, 1225};
  std::vector<InitKind> initializations{InitKind::Random};
  std::vector<AlgoSpec> algorithms{AlgoSpec{}};
  /// Trials per random-initialization cell; deterministic initializations
  /// always run a single trial.
  std::size_t trials = 30;
  double tolerance = 1e-5;
  std::uint64_t base_seed = 1;

  /// Trial t uses seed base_seed + t.
  std::uint64_t trial_seed(std::size_t trial) const {
    return base_seed + static_cast<std::uint64_t>(trial);
  }

  std::size_t trials_for(InitKind kind) const {
    return kind == InitKind::Random ? trials : 1;
  }

  void validate() const {
    if (lengths.empty())
      throw PlanValidationError("plan: lengths must be non-empty");
    if (initializations.empty())
      throw PlanValidationError("plan: initializations must be non-empty");
    if (algorithms.empty())
      throw PlanValidationError("plan: algorithms must be non-empty");
    if (trials < 1) throw PlanValidationError("plan: trials must be >= 1");
    if (tolerance <= 0.0)
      throw PlanValidationError("plan: tolerance must be positive");
    for (std::size_t P : lengths) {
      if (P < 1) throw PlanValidationError("plan: lengths must be positive");
    }
    for (InitKind kind : initializations) {
      if (kind != InitKind::Frank) continue;
      for (std::size_t P : lengths) {
        const auto M = static_cast<std::size_t>(
            std::llround(std::sqrt(static_cast<double>(P))));
        if (M * M != P)
          throw PlanValidationError(
              "plan: frank initialization requires perfect-square lengths, got " +
              std::to_string(P));
      }
    }
  }

  /// Small grid suitable for CI: lengths 100 and 225, five random trials.
  static ExperimentPlan desk_default() {
    ExperimentPlan plan;
    plan.lengths = {100, 225};
    plan.initializations = {InitKind::Random, InitKind::Golomb};
    plan.algorithms = {
        AlgoSpec{Algorithm::FISL, BoundStrategy::BEFFT, false},
        AlgoSpec{Algorithm::CAN, BoundStrategy::BEFFT, false},
        AlgoSpec{Algorithm::MISL, BoundStrategy::BEFFT, true},
        AlgoSpec{Algorithm::ISL_NEW, BoundStrategy::BEFFT, true},
    };
    plan.trials = 5;
    return plan;
  }

  /// The full benchmark grid (long-running).
  static ExperimentPlan paper_grid() {
    ExperimentPlan plan;
    plan.lengths = {100, 225, 400, 625, 900, 1225};
    plan.initializations = {InitKind::Random, InitKind::Golomb, InitKind::Frank};
    plan.algorithms = {
        AlgoSpec{Algorithm::FISL, BoundStrategy::BEFFT, false},
        AlgoSpec{Algorithm::CAN, BoundStrategy::BEFFT, false},
        AlgoSpec{Algorithm::MISL, BoundStrategy::BEFFT, false},
        AlgoSpec{Algorithm::MISL, BoundStrategy::BEFFT, true},
        AlgoSpec{Algorithm::ISL_NEW, BoundStrategy::BEFFT, false},
        AlgoSpec{Algorithm::ISL_NEW, BoundStrategy::BEFFT, true},
    };
    plan.trials = 30;
    return plan;
  }
};

inline nlohmann::ordered_json plan_to_json(const ExperimentPlan& plan) {
  nlohmann::ordered_json j;
  j["lengths"] = plan.lengths;
  {
    std::vector<std::string> inits;
    for (InitKind k : plan.initializations) inits.emplace_back(to_string(k));
    j["initializations"] = inits;
  }
  {
    nlohmann::ordered_json algos = nlohmann::ordered_json::array();
    for (const AlgoSpec& a : plan.algorithms) {
      nlohmann::ordered_json ja;
      ja["algorithm"] = to_string(a.algorithm);
      if (a.algorithm == Algorithm::FISL) ja["strategy"] = to_string(a.strategy);
      if (a.algorithm == Algorithm::MISL || a.algorithm == Algorithm::ISL_NEW)
        ja["accelerate"] = a.accelerate;
      algos.push_back(ja);
    }
    j["algorithms"] = algos;
  }
  j["trials"] = plan.trials;
  j["tolerance"] = plan.tolerance;
  j["base_seed"] = plan.base_seed;
  return j;
}

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
  ExperimentPlan plan;
  try {
    if (j.contains("lengths"))
      plan.lengths = j.at("lengths").get<std::vector<std::size_t>>();
    if (j.contains("initializations")) {
      plan.initializations.clear();
      for (const auto& s : j.at("initializations"))
        plan.initializations.push_back(
            init_kind_from_string(s.get<std::string>()));
    }
    if (j.contains("algorithms")) {
      plan.algorithms.clear();
      for (const auto& ja : j.at("algorithms")) {
        AlgoSpec a;
        a.algorithm =
            algorithm_from_string(ja.at("algorithm").get<std::string>());
        if (ja.contains("strategy"))
          a.strategy =
              bound_strategy_from_string(ja.at("strategy").get<std::string>());
        if (ja.contains("accelerate"))
          a.accelerate = ja.at("accelerate").get<bool>();
        plan.algorithms.push_back(a);
      }
    }
    if (j.contains("trials")) plan.trials = j.at("trials").get<std::size_t>();
    if (j.contains("tolerance"))
      plan.tolerance = j.at("tolerance").get<double>();
    if (j.contains("base_seed"))
      plan.base_seed = j.at("base_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw PlanValidationError(std::string("plan: malformed JSON: ") + e.what());
  }
  plan.validate();
  return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_plan: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw PlanValidationError(std::string("plan: parse error: ") + e.what());
  }
  return plan_from_json(j);
}

struct RunRecord {
  std::size_t length = 0;
  InitKind init = InitKind::Random;
  AlgoSpec algo;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double final_isl = 0.0;
  double final_psl = 0.0;
  /// Solver-internal elapsed time of the last iteration; excludes
  /// initialization generation and file I/O.
  double wall_seconds = 0.0;
  StopReason stop_reason = StopReason::Converged;
  std::string init_hash;
  std::string init_file;
  std::string sequence_file;
  std::string trace_file;
  std::string acf_file;
};

struct CellAggregate {
  std::size_t length = 0;
  InitKind init = InitKind::Random;
  std::string algorithm;
  std::string strategy;
  std::size_t trials = 0;
  double mean_wall_seconds = 0.0;
  double min_wall_seconds = 0.0;
  double max_wall_seconds = 0.0;
  double mean_iterations = 0.0;
  std::size_t min_iterations = 0;
  std::size_t max_iterations = 0;
};

struct ExperimentReport {
  ExperimentPlan plan;
  std::size_t worker_count = 1;
  std::vector<RunRecord> records;

  /// Per-(length, init, algorithm) aggregates over trials, in first-seen
  /// record order.
  std::vector<CellAggregate> aggregates() const {
    std::vector<CellAggregate> cells;
    for (const RunRecord& rec : records) {
      CellAggregate* cell = nullptr;
      for (auto& c : cells) {
        if (c.length == rec.length && c.init == rec.init &&
            c.algorithm == rec.algo.label() &&
            c.strategy == rec.algo.strategy_label()) {
          cell = &c;
          break;
        }
      }
      if (!cell) {
        cells.push_back(CellAggregate{rec.length, rec.init, rec.algo.label(),
                                      rec.algo.strategy_label(), 0, 0.0, 0.0,
                                      0.0, 0.0, 0, 0});
        cell = &cells.back();
        cell->min_wall_seconds = rec.wall_seconds;
        cell->max_wall_seconds = rec.wall_seconds;
        cell->min_iterations = rec.iterations;
        cell->max_iterations = rec.iterations;
      }
      ++cell->trials;
      cell->mean_wall_seconds += rec.wall_seconds;
      cell->mean_iterations += static_cast<double>(rec.iterations);
      cell->min_wall_seconds = std::min(cell->min_wall_seconds, rec.wall_seconds);
      cell->max_wall_seconds = std::max(cell->max_wall_seconds, rec.wall_seconds);
      cell->min_iterations = std::min(cell->min_iterations, rec.iterations);
      cell->max_iterations = std::max(cell->max_iterations, rec.iterations);
    }
    for (auto& c : cells) {
      c.mean_wall_seconds /= static_cast<double>(c.trials);
      c.mean_iterations /= static_cast<double>(c.trials);
    }
    return cells;
  }
};

namespace detail {

inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string run_basename(std::size_t length, InitKind init,
                                std::size_t trial, const std::string& algo) {
  std::ostringstream ss;
  ss << "P" << length << "_" << to_string(init) << "_t" << trial << "_" << algo;
  return ss.str();
}

/// Solver wall time: the monotonic in-solver clock at the last recorded
/// iteration.
inline double solver_wall_seconds(const SolverResult& res) {
  return res.trace.records.empty() ? 0.0
                                   : res.trace.records.back().elapsed_seconds;
}

}  // namespace detail

/// Runs every algorithm of the plan on the identical initialization
/// within each (length, init, trial) cell and writes per-run artifacts
/// plus summary.json / summary.csv into output_dir. Cells may run in
/// parallel (workers > 1); each run is internally sequential.
inline ExperimentReport run_plan(const ExperimentPlan& plan,
                                 const std::filesystem::path& output_dir,
                                 std::size_t workers = 1);

/// Runs FISL under all four majorizer strategies from one identical
/// starting point and reports (iterations, wall seconds, final ISL) per
/// strategy. Throws InternalConsistencyError when the final ISL values
/// spread by more than 1% relative.
struct StrategyComparisonRow {
  BoundStrategy strategy = BoundStrategy::TR;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  double final_isl = 0.0;
};

struct StrategyComparison {
  std::vector<StrategyComparisonRow> rows;
  double max_relative_spread = 0.0;
};

inline StrategyComparison compare_strategies(
    std::size_t length, InitKind init, std::uint64_t seed, double tolerance,
    std::size_t max_iterations = 100000) {
  const Sequence z0 = make_initialization(init, length, seed);
  StrategyComparison cmp;
  for (BoundStrategy strat : {BoundStrategy::TR, BoundStrategy::EI,
                              BoundStrategy::BEI, BoundStrategy::BEFFT}) {
    SolverConfig cfg;
    cfg.algorithm = Algorithm::FISL;
    cfg.bound_strategy = strat;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iterations;
    cfg.seed = seed;
    const SolverResult res = solve_fisl(z0, cfg);
    cmp.rows.push_back({strat, res.trace.iterations(),
                        detail::solver_wall_seconds(res), res.final_isl});
  }
  double lo = cmp.rows.front().final_isl;
  double hi = lo;
  for (const auto& row : cmp.rows) {
    lo = std::min(lo, row.final_isl);
    hi = std::max(hi, row.final_isl);
  }
  cmp.max_relative_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
  if (cmp.max_relative_spread > 0.01)
    throw InternalConsistencyError(
        "compare_strategies: final ISL values disagree by more than 1%");
  return cmp;
}

struct AlgorithmComparisonRow {
  std::string name;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  double final_isl = 0.0;
  double final_psl = 0.0;
};

/// Runs FISL(BEFFT), CAN, MISL, ACC-MISL, ISL-NEW and ACC-ISL-NEW from
/// the identical starting point.
inline std::vector<AlgorithmComparisonRow> compare_algorithms(
    std::size_t length, InitKind init, std::uint64_t seed, double tolerance,
    std::size_t max_iterations = 100000) {
  const Sequence z0 = make_initialization(init, length, seed);
  const std::vector<AlgoSpec> specs = {
      AlgoSpec{Algorithm::FISL, BoundStrategy::BEFFT, false},
      AlgoSpec{Algorithm::CAN, BoundStrategy::BEFFT, false},
      AlgoSpec{Algorithm::MISL, BoundStrategy::BEFFT, false},
      AlgoSpec{Algorithm::MISL, BoundStrategy::BEFFT, true},
      AlgoSpec{Algorithm::ISL_NEW, BoundStrategy::BEFFT, false},
      AlgoSpec{Algorithm::ISL_NEW, BoundStrategy::BEFFT, true},
  };
  std::vector<AlgorithmComparisonRow> rows;
  for (const AlgoSpec& spec : specs) {
    const SolverResult res =
        solve(z0, spec.config(tolerance, seed, max_iterations));
    rows.push_back({spec.label(), res.trace.iterations(),
                    detail::solver_wall_seconds(res), res.final_isl,
                    res.final_psl});
  }
  return rows;
}

struct BoundsRow {
  BoundStrategy strategy = BoundStrategy::TR;
  double m_scalar = 0.0;
  double lambda_max_8r = 0.0;
  double ratio = 0.0;
};

/// Diagnostic table for a sequence: every strategy's majorizer constant
/// next to the dense-eigensolver value of lambda_max(8R). Dense
/// eigendecomposition; intended for small lengths.
inline std::vector<BoundsRow> bounds_table(
    const Sequence& z, TransformEngine& engine = TransformEngine::thread_default()) {
  const CorrelationProfile r = autocorrelation_fft(z, engine);
  const ToeplitzOperator op = build_operator(r, engine);
  const double lam8 = 8.0 * dense_lambda_max(r);
  std::vector<BoundsRow> rows;
  for (BoundStrategy strat : {BoundStrategy::TR, BoundStrategy::EI,
                              BoundStrategy::BEI, BoundStrategy::BEFFT}) {
    const BoundValue b = compute_bound(op, strat, engine);
    rows.push_back({strat, b.m_scalar, lam8, lam8 > 0.0 ? b.m_scalar / lam8 : 0.0});
  }
  return rows;
}

inline void write_strategy_csv(std::ostream& out, const StrategyComparison& cmp) {
  out << "strategy,iterations,wall_seconds,final_isl\n";
  for (const auto& row : cmp.rows) {
    out << to_string(row.strategy) << "," << row.iterations << ","
        << detail::format_g17(row.wall_seconds) << ","
        << detail::format_g17(row.final_isl) << "\n";
  }
}

inline void write_algorithm_csv(std::ostream& out,
                                const std::vector<AlgorithmComparisonRow>& rows) {
  out << "algorithm,iterations,wall_seconds,final_isl,final_psl\n";
  for (const auto& row : rows) {
    out << row.name << "," << row.iterations << ","
        << detail::format_g17(row.wall_seconds) << ","
        << detail::format_g17(row.final_isl) << ","
        << detail::format_g17(row.final_psl) << "\n";
  }
}

inline void write_bounds_csv(std::ostream& out,
                             const std::vector<BoundsRow>& rows) {
  out << "strategy,m_scalar,lambda_max_8R,ratio\n";
  for (const auto& row : rows) {
    out << to_string(row.strategy) << "," << detail::format_g17(row.m_scalar)
        << "," << detail::format_g17(row.lambda_max_8r) << ","
        << detail::format_g17(row.ratio) << "\n";
  }
}

/// Writes the flat per-run CSV and the structured JSON summary.
/// Re-exporting the same report produces byte-identical files.
inline void export_summary(const ExperimentReport& report,
                           const std::filesystem::path& json_path,
                           const std::filesystem::path& csv_path) {
  if (report.records.empty())
    throw PreconditionError("export_summary: report is empty");

  std::ofstream csv(csv_path);
  if (!csv) throw IoError("export_summary: cannot open " + csv_path.string());
  csv << "length,init,algorithm,strategy,trial,iterations,final_isl,final_psl,"
         "wall_seconds,stop_reason\n";
  for (const RunRecord& rec : report.records) {
    csv << rec.length << "," << to_string(rec.init) << "," << rec.algo.label()
        << "," << rec.algo.strategy_label() << "," << rec.trial << ","
        << rec.iterations << "," << detail::format_g17(rec.final_isl) << ","
        << detail::format_g17(rec.final_psl) << ","
        << detail::format_g17(rec.wall_seconds) << ","
        << to_string(rec.stop_reason) << "\n";
  }
  if (!csv) throw IoError("export_summary: CSV stream failure");

  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["worker_count"] = report.worker_count;
  j["plan"] = plan_to_json(report.plan);
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const RunRecord& rec : report.records) {
    nlohmann::ordered_json jr;
    jr["length"] = rec.length;
    jr["init"] = to_string(rec.init);
    jr["algorithm"] = rec.algo.label();
    jr["strategy"] = rec.algo.strategy_label();
    jr["trial"] = rec.trial;
    jr["seed"] = rec.seed;
    jr["iterations"] = rec.iterations;
    jr["final_isl"] = rec.final_isl;
    jr["final_psl"] = rec.final_psl;
    jr["wall_seconds"] = rec.wall_seconds;
    jr["stop_reason"] = to_string(rec.stop_reason);
    jr["init_hash"] = rec.init_hash;
    jr["init_file"] = rec.init_file;
    jr["sequence_file"] = rec.sequence_file;
    jr["trace_file"] = rec.trace_file;
    jr["acf_file"] = rec.acf_file;
    recs.push_back(jr);
  }
  j["records"] = recs;
  nlohmann::ordered_json aggs = nlohmann::ordered_json::array();
  for (const CellAggregate& c : report.aggregates()) {
    nlohmann::ordered_json jc;
    jc["length"] = c.length;
    jc["init"] = to_string(c.init);
    jc["algorithm"] = c.algorithm;
    jc["strategy"] = c.strategy;
    jc["trials"] = c.trials;
    jc["mean_wall_seconds"] = c.mean_wall_seconds;
    jc["min_wall_seconds"] = c.min_wall_seconds;
    jc["max_wall_seconds"] = c.max_wall_seconds;
    jc["mean_iterations"] = c.mean_iterations;
    jc["min_iterations"] = c.min_iterations;
    jc["max_iterations"] = c.max_iterations;
    aggs.push_back(jc);
  }
  j["aggregates"] = aggs;

  std::ofstream js(json_path);
  if (!js) throw IoError("export_summary: cannot open " + json_path.string());
  js << j.dump(2) << "\n";
  if (!js) throw IoError("export_summary: JSON stream failure");
}

inline ExperimentReport run_plan(const ExperimentPlan& plan,
                                 const std::filesystem::path& output_dir,
                                 std::size_t workers) {
  plan.validate();

  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  {
    const auto probe = output_dir / ".write_probe";
    std::ofstream p(probe);
    if (ec || !p)
      throw IoError("run_plan: output directory is not writable: " +
                    output_dir.string());
    p.close();
    std::filesystem::remove(probe, ec);
  }

  struct Cell {
    std::size_t length;
    InitKind init;
    std::size_t trial;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::size_t P : plan.lengths) {
    for (InitKind kind : plan.initializations) {
      const std::size_t T = plan.trials_for(kind);
      for (std::size_t t = 0; t < T; ++t)
        cells.push_back({P, kind, t, plan.trial_seed(t)});
    }
  }

  std::vector<std::vector<RunRecord>> cell_records(cells.size());

  auto run_cell = [&](std::size_t idx) {
    const Cell& cell = cells[idx];
    const Sequence z0 = make_initialization(cell.init, cell.length, cell.seed);

    std::ostringstream init_name;
    init_name << "init_P" << cell.length << "_" << to_string(cell.init) << "_t"
              << cell.trial << ".txt";
    const auto init_path = output_dir / init_name.str();
    save_sequence(init_path.string(), z0);
    const std::string init_hash =
        detail::fnv1a_hex(detail::read_file_bytes(init_path.string()));

    for (const AlgoSpec& spec : plan.algorithms) {
      const SolverConfig cfg = spec.config(plan.tolerance, cell.seed);
      const SolverResult res = solve(z0, cfg);

      const std::string base = detail::run_basename(
          cell.length, cell.init, cell.trial,
          spec.algorithm == Algorithm::FISL
              ? spec.label() + "-" + spec.strategy_label()
              : spec.label());
      const auto trace_path = output_dir / (base + ".trace.csv");
      const auto seq_path = output_dir / (base + ".seq.txt");
      const auto acf_path = output_dir / (base + ".acf.csv");
      {
        std::ofstream out(trace_path);
        if (!out) throw IoError("run_plan: cannot open " + trace_path.string());
        write_trace_csv(out, res.trace);
      }
      save_sequence(seq_path.string(), res.sequence);
      {
        std::ofstream out(acf_path);
        if (!out) throw IoError("run_plan: cannot open " + acf_path.string());
        write_profile_csv(out, autocorrelation_fft(res.sequence));
      }

      RunRecord rec;
      rec.length = cell.length;
      rec.init = cell.init;
      rec.algo = spec;
      rec.trial = cell.trial;
      rec.seed = cell.seed;
      rec.iterations = res.trace.iterations();
      rec.final_isl = res.final_isl;
      rec.final_psl = res.final_psl;
      rec.wall_seconds = detail::solver_wall_seconds(res);
      rec.stop_reason = res.trace.stop_reason;
      rec.init_hash = init_hash;
      rec.init_file = init_name.str();
      rec.sequence_file = base + ".seq.txt";
      rec.trace_file = base + ".trace.csv";
      rec.acf_file = base + ".acf.csv";
      cell_records[idx].push_back(std::move(rec));
    }
  };

  const std::size_t worker_count = std::max<std::size_t>(1, workers);
  if (worker_count == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < worker_count; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          try {
            run_cell(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  ExperimentReport report;
  report.plan = plan;
  report.worker_count = worker_count;
  for (auto& recs : cell_records)
    for (auto& rec : recs) report.records.push_back(std::move(rec));

  export_summary(report, output_dir / "summary.json", output_dir / "summary.csv");
  return report;
}

}  // namespace seqforge

#endif  // SEQFORGE_HARNESS_HPP_
