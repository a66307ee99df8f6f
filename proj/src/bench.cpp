#include "nts/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <sys/utsname.h>
#include <thread>

#include <nlohmann/json.hpp>

#include "nts/generator.hpp"
#include "nts/selectnts.hpp"

namespace nts {

void BenchConfig::validate() const {
  if (instances.empty())
    throw std::invalid_argument("bench: no instances");
  if (solver != "probsat" && solver != "selectnts")
    throw std::invalid_argument("bench: unknown solver '" + solver + "'");
  if (runs < 1)
    throw std::invalid_argument("bench: runs must be >= 1");
  if (!time_limit_seconds && !flip_limit)
    throw std::invalid_argument(
        "bench: need a time limit or a flip limit (one may be unlimited, "
        "not both)");
  if (jobs < 1)
    throw std::invalid_argument("bench: jobs must be >= 1");
  params.validate();
}

double par2(std::span<const std::pair<bool, double>> outcomes, double limit) {
  if (outcomes.empty())
    throw std::invalid_argument("par2: no outcomes");
  double sum = 0.0;
  for (const auto &[solved, seconds] : outcomes)
    sum += solved ? seconds : 2.0 * limit;
  return sum / (double)outcomes.size();
}

namespace {

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

} // namespace

uint64_t run_seed(uint64_t seed0, std::string_view instance_path,
                  uint32_t run_index) {
  return (seed0 + run_index) ^ fnv1a64(instance_path);
}

BenchReport aggregate_report(std::vector<RunRecord> records,
                             std::optional<double> time_limit_seconds) {
  BenchReport report;
  report.run_records = std::move(records);

  double par2_sum = 0.0;
  uint64_t solved_total = 0;
  uint32_t runs_per_instance = 0;
  for (const auto &rec : report.run_records) {
    if (report.rows.empty() || report.rows.back().instance != rec.instance)
      report.rows.push_back({rec.instance});
    InstanceRow &row = report.rows.back();
    ++row.runs;
    runs_per_instance = std::max(runs_per_instance, row.runs);
    row.parse_error |= rec.parse_error;
    if (rec.solved) {
      ++row.solved;
      ++solved_total;
      row.mean_flips += (double)rec.flips;
    }
  }
  for (auto &row : report.rows)
    row.mean_flips = row.solved ? row.mean_flips / (double)row.solved : 0.0;

  if (time_limit_seconds) {
    const double limit = *time_limit_seconds;
    std::vector<std::pair<bool, double>> outcomes;
    for (auto &row : report.rows) {
      outcomes.clear();
      for (const auto &rec : report.run_records)
        if (rec.instance == row.instance)
          outcomes.emplace_back(rec.solved, rec.seconds);
      row.par2_seconds = par2(outcomes, limit);
    }
    for (const auto &rec : report.run_records)
      par2_sum += rec.solved ? rec.seconds : 2.0 * limit;
    report.par2_seconds = par2_sum / (double)report.run_records.size();
  }

  report.avers = runs_per_instance
                     ? (double)solved_total / (double)runs_per_instance
                     : 0.0;
  return report;
}

BenchReport run_suite(const BenchConfig &cfg) {
  cfg.validate();

  // Parse each instance once; a broken file marks all of its runs failed.
  struct Task {
    std::shared_ptr<const Formula> formula; // null on parse error
    std::string path;
  };
  std::vector<Task> tasks;
  tasks.reserve(cfg.instances.size());
  for (const auto &path : cfg.instances) {
    Task task{nullptr, path};
    try {
      task.formula = std::make_shared<Formula>(parse_dimacs_file(path));
    } catch (const std::exception &) {
      // recorded below as failed rows
    }
    tasks.push_back(std::move(task));
  }

  std::vector<RunRecord> records(tasks.size() * (size_t)cfg.runs);
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= records.size())
        return;
      const Task &task = tasks[i / cfg.runs];
      const auto run_index = (uint32_t)(i % cfg.runs);
      RunRecord &rec = records[i];
      rec.instance = task.path;
      rec.run = run_index;
      rec.seed = run_seed(cfg.params.seed, task.path, run_index);
      if (!task.formula) {
        rec.parse_error = true;
        continue;
      }

      SolverParams params = cfg.params;
      params.seed = rec.seed;
      RunLimits limits;
      limits.flip_limit = cfg.flip_limit;
      if (cfg.time_limit_seconds)
        limits.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<
                              std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(
                                  *cfg.time_limit_seconds));
      Rng rng(rec.seed);
      const RunResult result =
          cfg.solver == "probsat"
              ? solve_probsat(*task.formula, params, rng, limits)
              : solve_selectnts(*task.formula, params, rng, limits);
      if (result.status == SolveStatus::satisfied) {
        // Models are verified inside the engines as well; re-check before
        // the row is counted.
        if (!check_assignment(*task.formula, *result.model).empty())
          throw std::logic_error("bench: model failed verification");
        rec.solved = true;
      }
      rec.tries = result.tries_used;
      rec.flips = result.total_flips;
      rec.seconds = result.wall_seconds;
    }
  };

  if (cfg.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (uint32_t j = 0; j < cfg.jobs; ++j)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  BenchReport report =
      aggregate_report(std::move(records), cfg.time_limit_seconds);

  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    std::ofstream runs(dir / "runs.csv");
    write_runs_csv(report, runs);
    std::ofstream summary(dir / "summary.csv");
    write_summary_csv(report, summary);
    std::ofstream meta(dir / "metadata.json");
    write_metadata_json(cfg, meta);
  }
  return report;
}

/*------------------------------------------------------------------------*/

namespace {

// Shortest representation that parses back to the same double.
std::string fmt_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

} // namespace

void write_runs_csv(const BenchReport &report, std::ostream &out) {
  out << "instance,run,seed,status,tries,flips,seconds\n";
  for (const auto &rec : report.run_records) {
    const char *status = rec.parse_error ? "parse_error"
                         : rec.solved    ? "sat"
                                         : "unknown";
    out << rec.instance << ',' << rec.run << ',' << rec.seed << ',' << status
        << ',' << rec.tries << ',' << rec.flips << ',' << fmt_double(rec.seconds)
        << '\n';
  }
}

void write_summary_csv(const BenchReport &report, std::ostream &out) {
  out << "instance,runs,solved,success_rate,par2_seconds,mean_flips_solved\n";
  for (const auto &row : report.rows) {
    out << row.instance << ',' << row.runs << ',' << row.solved << ','
        << fmt_double(row.runs ? (double)row.solved / row.runs : 0.0) << ',';
    if (!std::isnan(row.par2_seconds))
      out << fmt_double(row.par2_seconds);
    out << ',' << fmt_double(row.mean_flips) << '\n';
  }
  out << "ALL,,," << fmt_double(report.avers) << ',';
  if (!std::isnan(report.par2_seconds))
    out << fmt_double(report.par2_seconds);
  out << ",\n";
}

void write_metadata_json(const BenchConfig &cfg, std::ostream &out) {
  nlohmann::json params{
      {"max_tries", cfg.params.max_tries},
      {"max_steps", cfg.params.max_steps},
      {"beta", cfg.params.beta},
      {"gamma", cfg.params.gamma},
      {"cc_enabled", cfg.params.cc_enabled},
      {"reset_counters_each_try", cfg.params.reset_counters_each_try},
  };
  if (cfg.params.shape) {
    params["shape"] = cfg.params.shape->kind == ProbShapeKind::polynomial
                          ? "polynomial"
                          : "exponential";
    params["cb"] = cfg.params.shape->cb;
  } else {
    params["shape"] = "auto";
  }

  utsname uts{};
  uname(&uts);
  nlohmann::json doc{
      {"solver", cfg.solver},
      {"params", params},
      {"rng", Rng::algorithm},
      {"seed0", cfg.params.seed},
      {"run_seed_rule", "(seed0 + run_index) xor fnv1a64(instance_path)"},
      {"runs_per_instance", cfg.runs},
      {"jobs", cfg.jobs},
      {"instances", cfg.instances.size()},
      {"host",
       {{"sysname", uts.sysname},
        {"release", uts.release},
        {"machine", uts.machine}}},
  };
  if (cfg.time_limit_seconds)
    doc["time_limit_seconds"] = *cfg.time_limit_seconds;
  if (cfg.flip_limit)
    doc["flip_limit"] = *cfg.flip_limit;
  out << doc.dump(2) << '\n';
}

/*------------------------------------------------------------------------*/

namespace {

class CounterTrace final : public StepTrace {
public:
  CounterTrace(uint32_t clause_count, uint32_t var_count)
      : cnts_(clause_count, 0), vnts_((size_t)var_count + 1, 0) {}

  void on_step(uint64_t step, uint32_t clause, uint32_t var,
               const SearchState &, const NtsCounters *) override {
    ++cnts_[clause];
    ++vnts_[var];
    steps_ = step;
  }

  std::vector<uint64_t> cnts_, vnts_;
  uint64_t steps_ = 0;
};

} // namespace

DistributionSnapshot snapshot_distributions(const Formula &f,
                                            const std::string &solver,
                                            const SolverParams &params,
                                            uint64_t steps, Rng &rng) {
  if (steps < 1)
    throw std::invalid_argument("snapshot: steps must be >= 1");
  SolverParams bounded = params;
  bounded.max_tries = 1; // a single try keeps the step counter unambiguous
  bounded.max_steps = steps;

  CounterTrace trace(f.clause_count(), f.var_count());
  RunResult result;
  if (solver == "probsat")
    result = solve_probsat(f, bounded, rng, {}, &trace);
  else if (solver == "selectnts")
    result = solve_selectnts(f, bounded, rng, {}, &trace);
  else
    throw std::invalid_argument("snapshot: unknown solver '" + solver + "'");

  DistributionSnapshot snap;
  snap.solver = solver;
  snap.solved = result.status == SolveStatus::satisfied;
  snap.steps = trace.steps_;
  snap.cnts = std::move(trace.cnts_);
  snap.vnts = std::move(trace.vnts_);
  double sum_c = 0.0, sum_v = 0.0;
  for (uint64_t c : snap.cnts) {
    snap.max_cnts = std::max(snap.max_cnts, c);
    sum_c += (double)c;
  }
  for (size_t v = 1; v < snap.vnts.size(); ++v) {
    snap.max_vnts = std::max(snap.max_vnts, snap.vnts[v]);
    sum_v += (double)snap.vnts[v];
  }
  snap.mean_cnts = snap.cnts.empty() ? 0.0 : sum_c / (double)snap.cnts.size();
  snap.mean_vnts =
      snap.vnts.size() > 1 ? sum_v / (double)(snap.vnts.size() - 1) : 0.0;
  return snap;
}

void write_distribution_csv(const DistributionSnapshot &snap,
                            std::ostream &out) {
  out << "kind,id,count\n";
  for (size_t c = 0; c < snap.cnts.size(); ++c)
    out << "clause," << c << ',' << snap.cnts[c] << '\n';
  for (size_t v = 1; v < snap.vnts.size(); ++v)
    out << "variable," << v << ',' << snap.vnts[v] << '\n';
}

} // namespace nts
