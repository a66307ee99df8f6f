// Command line front end: solve / generate / bench / diagnose.
//
// Exit codes follow the SAT competition convention for `solve`:
// 10 = satisfiable, 0 = unknown, 1 = error.  Every randomized subcommand
// takes --seed (default 1, always echoed), so identical invocations produce
// identical output; wall-clock limits are the only source of nondeterminism.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nts/bench.hpp"
#include "nts/cnf.hpp"
#include "nts/generator.hpp"
#include "nts/probsat.hpp"
#include "nts/selectnts.hpp"

namespace {

struct SolverFlags {
  std::string solver = "selectnts";
  uint64_t max_tries = 10;
  uint64_t max_steps = 1'000'000;
  std::string shape = "auto"; // auto | poly | exp
  double cb = 0.0;            // 0: shape default
  std::optional<uint64_t> beta, gamma;
  uint64_t seed = 1;
  bool no_cc = false;
  bool reset_counters = false;
  std::string family; // hrs | uniform | "" (infer from filename)
  std::string regime; // medium | huge | "" (infer from size)
};

void add_solver_flags(CLI::App *cmd, SolverFlags &fl) {
  cmd->add_option("--solver", fl.solver, "Engine: probsat or selectnts")
      ->check(CLI::IsMember({"probsat", "selectnts"}))
      ->capture_default_str();
  cmd->add_option("--max-tries", fl.max_tries, "Restarts per run")
      ->capture_default_str();
  cmd->add_option("--max-steps", fl.max_steps, "Flips per try")
      ->capture_default_str();
  cmd->add_option("--shape", fl.shape,
                  "Probability shape: auto (by max clause length), poly, exp")
      ->check(CLI::IsMember({"auto", "poly", "exp"}))
      ->capture_default_str();
  cmd->add_option("--cb", fl.cb,
                  "cb constant for --shape poly/exp (default: 2.06 for poly; "
                  "3.0/3.7/5.0/5.4 for exp with k=4/5/6/>=7)");
  cmd->add_option("--beta", fl.beta,
                  "SelectNTS cNTS threshold (default: preset table)");
  cmd->add_option("--gamma", fl.gamma,
                  "SelectNTS S_v divisor (default: preset table)");
  cmd->add_option("--seed", fl.seed, "RNG seed")->capture_default_str();
  cmd->add_flag("--no-cc", fl.no_cc,
                "Disable the no-immediate-repeat variable filter");
  cmd->add_flag("--reset-counters", fl.reset_counters,
                "Reset cNTS/vNTS at each try instead of keeping them global");
  cmd->add_option("--family", fl.family,
                  "Preset family for --solver selectnts: hrs or uniform "
                  "(default: inferred from the file name)")
      ->check(CLI::IsMember({"hrs", "uniform"}));
  cmd->add_option("--regime", fl.regime,
                  "Preset size regime for uniform instances: medium or huge "
                  "(default: inferred from n)")
      ->check(CLI::IsMember({"medium", "huge"}));
}

// Fills beta/gamma from the preset tables when not given explicitly.
nts::SolverParams resolve_params(const SolverFlags &fl, const nts::Formula &f,
                                 const std::string &path) {
  nts::SolverParams params;
  params.max_tries = fl.max_tries;
  params.max_steps = fl.max_steps;
  params.seed = fl.seed;
  params.cc_enabled = !fl.no_cc;
  params.reset_counters_each_try = fl.reset_counters;
  if (fl.shape != "auto") {
    nts::ProbShape shape;
    shape.kind = fl.shape == "poly" ? nts::ProbShapeKind::polynomial
                                    : nts::ProbShapeKind::exponential;
    shape.cb = fl.cb > 0.0
                   ? fl.cb
                   : (fl.shape == "poly"
                          ? 2.06
                          : nts::default_shape_for(f.max_clause_size()).cb);
    params.shape = shape;
  } else if (fl.cb > 0.0) {
    nts::ProbShape shape = nts::default_shape_for(f.max_clause_size());
    shape.cb = fl.cb;
    params.shape = shape;
  }

  if (fl.solver != "selectnts")
    return params;
  if (fl.beta && fl.gamma) {
    params.beta = *fl.beta;
    params.gamma = *fl.gamma;
    return params;
  }

  const std::string name = std::filesystem::path(path).filename().string();
  nts::InstanceFamily family = nts::InstanceFamily::uniform;
  if (fl.family == "hrs")
    family = nts::InstanceFamily::hrs;
  else if (fl.family.empty() &&
           (name.find("fla") != std::string::npos ||
            name.find("hrs") != std::string::npos))
    family = nts::InstanceFamily::hrs;
  nts::SizeRegime regime = f.var_count() > 10'000 ? nts::SizeRegime::huge
                                                  : nts::SizeRegime::medium;
  if (fl.regime == "medium")
    regime = nts::SizeRegime::medium;
  else if (fl.regime == "huge")
    regime = nts::SizeRegime::huge;

  const nts::ParamPreset preset = nts::default_params_for(
      family, f.max_clause_size(), f.ratio(), f.var_count(), regime);
  if (!preset.from_table)
    std::cerr << "c warning: no preset for this instance shape, using "
                 "fallback beta="
              << preset.beta << " gamma=" << preset.gamma << '\n';
  params.beta = fl.beta.value_or(preset.beta);
  params.gamma = fl.gamma.value_or(preset.gamma);
  return params;
}

nts::RunLimits limits_from(std::optional<double> time_limit,
                           std::optional<uint64_t> flip_limit) {
  nts::RunLimits limits;
  limits.flip_limit = flip_limit;
  if (time_limit)
    limits.deadline =
        std::chrono::steady_clock::now() +
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(*time_limit));
  return limits;
}

int cmd_solve(const std::string &path, const SolverFlags &fl,
              std::optional<double> time_limit) {
  const nts::Formula f = nts::parse_dimacs_file(path);
  const nts::SolverParams params = resolve_params(fl, f, path);
  nts::Rng rng(params.seed);

  std::cout << "c instance " << path << " n=" << f.var_count()
            << " m=" << f.clause_count() << " r=" << f.ratio() << '\n';
  std::cout << "c solver " << fl.solver << " seed=" << params.seed
            << " rng=" << nts::Rng::algorithm
            << " max-tries=" << params.max_tries
            << " max-steps=" << params.max_steps;
  if (fl.solver == "selectnts")
    std::cout << " beta=" << params.beta << " gamma=" << params.gamma;
  std::cout << '\n';

  const nts::RunResult result =
      fl.solver == "probsat"
          ? nts::solve_probsat(f, params, rng, limits_from(time_limit, {}))
          : nts::solve_selectnts(f, params, rng, limits_from(time_limit, {}));

  std::cout << "c flips " << result.total_flips << " tries "
            << result.tries_used << '\n';
  std::cerr << "c wall-seconds " << result.wall_seconds << '\n';
  if (result.status == nts::SolveStatus::satisfied) {
    std::cout << "s SATISFIABLE\n";
    std::cout << 'v';
    for (uint32_t v = 1; v <= f.var_count(); ++v)
      std::cout << ' ' << (result.model->value(v) ? (int)v : -(int)v);
    std::cout << " 0\n";
    return 10;
  }
  std::cout << "s UNKNOWN\n";
  return 0;
}

int cmd_generate(const nts::GenSpec &spec, const std::string &out_path) {
  const nts::Formula f = nts::gen_uniform_ksat(spec);
  const auto comments = nts::generator_comments(spec);
  if (out_path.empty() || out_path == "-") {
    nts::write_dimacs(f, std::cout, comments);
  } else {
    std::ofstream out(out_path);
    if (!out)
      throw std::runtime_error("cannot write '" + out_path + "'");
    nts::write_dimacs(f, out, comments);
  }
  return 0;
}

std::vector<std::string> collect_instances(std::vector<std::string> paths,
                                           const std::string &dir) {
  if (!dir.empty()) {
    for (const auto &entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".cnf")
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
  }
  if (paths.empty())
    throw std::runtime_error("no instances given");
  return paths;
}

int cmd_bench(std::vector<std::string> paths, const std::string &dir,
              const SolverFlags &fl, uint32_t runs,
              std::optional<double> time_limit,
              std::optional<uint64_t> flip_limit, uint32_t jobs,
              const std::string &out_dir) {
  nts::BenchConfig cfg;
  cfg.instances = collect_instances(std::move(paths), dir);
  cfg.solver = fl.solver;
  {
    // Presets are per-instance; for a whole suite the flags must pin one
    // parameter set, so resolve against the first instance.
    const nts::Formula probe = nts::parse_dimacs_file(cfg.instances.front());
    cfg.params = resolve_params(fl, probe, cfg.instances.front());
  }
  cfg.runs = runs;
  cfg.time_limit_seconds = time_limit;
  cfg.flip_limit = flip_limit;
  cfg.jobs = jobs;
  cfg.out_dir = out_dir;

  const nts::BenchReport report = nts::run_suite(cfg);
  std::cout << "instance,runs,solved,par2_seconds\n";
  for (const auto &row : report.rows) {
    std::cout << row.instance << ',' << row.runs << ',' << row.solved << ',';
    if (!std::isnan(row.par2_seconds))
      std::cout << row.par2_seconds;
    std::cout << '\n';
  }
  std::cout << "AverS " << report.avers << '\n';
  if (!std::isnan(report.par2_seconds))
    std::cout << "PAR-2 " << report.par2_seconds << '\n';
  if (!out_dir.empty())
    std::cout << "report written to " << out_dir << '\n';
  return 0;
}

int cmd_diagnose(std::vector<std::string> paths, const SolverFlags &fl,
                 uint64_t steps, const std::string &solver_choice,
                 const std::string &out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> solvers;
  if (solver_choice == "both")
    solvers = {"probsat", "selectnts"};
  else
    solvers = {solver_choice};

  for (const auto &path : paths) {
    const nts::Formula f = nts::parse_dimacs_file(path);
    const std::string stem = std::filesystem::path(path).stem().string();
    for (const auto &solver : solvers) {
      SolverFlags local = fl;
      local.solver = solver;
      const nts::SolverParams params = resolve_params(local, f, path);
      nts::Rng rng(params.seed);
      const nts::DistributionSnapshot snap =
          nts::snapshot_distributions(f, solver, params, steps, rng);

      const auto csv_path =
          std::filesystem::path(out_dir) / (stem + "." + solver + ".dist.csv");
      std::ofstream csv(csv_path);
      nts::write_distribution_csv(snap, csv);
      std::cout << stem << ' ' << solver << ": steps=" << snap.steps
                << (snap.solved ? " (solved)" : "")
                << " max-cnts=" << snap.max_cnts << " max-vnts=" << snap.max_vnts
                << " mean-cnts=" << snap.mean_cnts
                << " mean-vnts=" << snap.mean_vnts << " -> "
                << csv_path.string() << '\n';
    }
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Stochastic local search SAT solvers: ProbSAT-style "
               "probability selection and SelectNTS selection counters"};
  app.require_subcommand(1);

  // solve
  auto *solve = app.add_subcommand("solve", "Solve a DIMACS CNF instance");
  std::string instance;
  solve->add_option("instance", instance, "DIMACS CNF file")->required();
  SolverFlags solve_flags;
  add_solver_flags(solve, solve_flags);
  std::optional<double> solve_time_limit;
  solve->add_option("--time-limit", solve_time_limit,
                    "Wall-clock limit in seconds");

  // generate
  auto *generate =
      app.add_subcommand("generate", "Generate a uniform random k-SAT instance");
  nts::GenSpec spec;
  std::string gen_out;
  generate->add_option("--n", spec.var_count, "Variable count")->required();
  generate->add_option("--k", spec.clause_size, "Clause length")
      ->capture_default_str();
  generate->add_option("--ratio", spec.ratio,
                       "Clause-to-variable ratio; m = round(ratio * n)");
  generate->add_option("--m", spec.clause_count,
                       "Explicit clause count (overrides --ratio)");
  generate->add_option("--seed", spec.seed, "RNG seed")->capture_default_str();
  generate->add_option("-o,--out", gen_out, "Output path (default: stdout)");

  // bench
  auto *bench = app.add_subcommand(
      "bench", "Run a solver repeatedly over instances; report AverS / PAR-2");
  std::vector<std::string> bench_paths;
  std::string bench_dir, bench_out_dir;
  uint32_t bench_runs = 10, bench_jobs = 1;
  std::optional<double> bench_time_limit;
  std::optional<uint64_t> bench_flip_limit;
  bench->add_option("instances", bench_paths, "DIMACS CNF files");
  bench->add_option("--dir", bench_dir, "Directory of .cnf instances");
  SolverFlags bench_flags;
  add_solver_flags(bench, bench_flags);
  bench->add_option("--runs", bench_runs, "Runs per instance")
      ->capture_default_str();
  bench->add_option("--time-limit", bench_time_limit,
                    "Wall-clock limit per run in seconds");
  bench->add_option("--flip-limit", bench_flip_limit,
                    "Total flip limit per run");
  bench->add_option("--jobs", bench_jobs, "Worker threads")
      ->capture_default_str();
  bench->add_option("--out-dir", bench_out_dir,
                    "Write runs.csv, summary.csv, metadata.json here");

  // diagnose
  auto *diagnose = app.add_subcommand(
      "diagnose", "Dump cNTS/vNTS distributions after a bounded run");
  std::vector<std::string> diag_paths;
  std::string diag_solver = "both", diag_out_dir = ".";
  uint64_t diag_steps = 100'000;
  diagnose->add_option("instances", diag_paths, "DIMACS CNF files")
      ->required();
  SolverFlags diag_flags;
  add_solver_flags(diagnose, diag_flags);
  diagnose->add_option("--steps", diag_steps, "Snapshot step budget")
      ->capture_default_str();
  diagnose
      ->add_option("--snapshot-solver", diag_solver,
                   "probsat, selectnts, or both")
      ->check(CLI::IsMember({"probsat", "selectnts", "both"}))
      ->capture_default_str();
  diagnose->add_option("--out-dir", diag_out_dir, "Snapshot CSV directory")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(instance, solve_flags, solve_time_limit);
    if (generate->parsed())
      return cmd_generate(spec, gen_out);
    if (bench->parsed())
      return cmd_bench(bench_paths, bench_dir, bench_flags, bench_runs,
                       bench_time_limit, bench_flip_limit, bench_jobs,
                       bench_out_dir);
    if (diagnose->parsed())
      return cmd_diagnose(diag_paths, diag_flags, diag_steps, diag_solver,
                          diag_out_dir);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
