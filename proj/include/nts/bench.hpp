#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nts/probsat.hpp"

namespace nts {

struct BenchConfig {
  std::vector<std::string> instances; // DIMACS paths
  std::string solver = "selectnts";   // "probsat" | "selectnts"
  SolverParams params;
  uint32_t runs = 10;
  std::optional<double> time_limit_seconds;
  std::optional<uint64_t> flip_limit;
  uint32_t jobs = 1;
  std::string out_dir; // empty: nothing written to disk

  void validate() const;
};

struct RunRecord {
  std::string instance;
  uint32_t run = 0; // 0-based run index
  uint64_t seed = 0;
  bool parse_error = false;
  bool solved = false;
  uint32_t tries = 0;
  uint64_t flips = 0;
  double seconds = 0.0;
};

struct InstanceRow {
  std::string instance;
  uint32_t runs = 0;
  uint32_t solved = 0;
  double par2_seconds = std::numeric_limits<double>::quiet_NaN();
  double mean_flips = 0.0;
  bool parse_error = false;
};

struct BenchReport {
  std::vector<RunRecord> run_records; // instance-major, run-minor order
  std::vector<InstanceRow> rows;
  double avers = 0.0; // mean instances solved per run across the set
  double par2_seconds = std::numeric_limits<double>::quiet_NaN();
};

// Penalized average runtime: mean of (seconds if solved, else 2 * limit).
double par2(std::span<const std::pair<bool, double>> outcomes, double limit);

// Seed for one (instance, run) cell: seed0 + run, with the instance path
// hashed into the stream so instances draw independently.
uint64_t run_seed(uint64_t seed0, std::string_view instance_path,
                  uint32_t run_index);

// Aggregation is separated from execution so synthetic outcomes can be fed
// through the same arithmetic.
BenchReport aggregate_report(std::vector<RunRecord> records,
                             std::optional<double> time_limit_seconds);

// Executes runs x instances solver invocations (re-verifying every model),
// aggregates, and persists runs.csv / summary.csv / metadata.json under
// out_dir when set.
BenchReport run_suite(const BenchConfig &cfg);

void write_runs_csv(const BenchReport &report, std::ostream &out);
void write_summary_csv(const BenchReport &report, std::ostream &out);
void write_metadata_json(const BenchConfig &cfg, std::ostream &out);

/*------------------------------------------------------------------------*/

// cNTS/vNTS counter dumps after a bounded run, for distribution diagnostics.
// Counters are accumulated observationally from the step stream, so the same
// measurement applies to ProbSAT (which keeps no counters of its own) and to
// SelectNTS alike.
struct DistributionSnapshot {
  std::string solver;
  uint64_t steps = 0; // executed steps; less than requested if solved early
  bool solved = false;
  std::vector<uint64_t> cnts; // per clause id
  std::vector<uint64_t> vnts; // per variable, slot 0 unused
  uint64_t max_cnts = 0, max_vnts = 0;
  double mean_cnts = 0.0, mean_vnts = 0.0;
};

// Runs the chosen engine for at most `steps` steps in a single try.
DistributionSnapshot snapshot_distributions(const Formula &f,
                                            const std::string &solver,
                                            const SolverParams &params,
                                            uint64_t steps, Rng &rng);

// Rows "kind,id,count" with kind in {clause, variable}; clause ids 0-based,
// variables 1-based.
void write_distribution_csv(const DistributionSnapshot &snap,
                            std::ostream &out);

} // namespace nts
