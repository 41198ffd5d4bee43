#pragma once

#include <string>
#include <vector>

#include "fruitgrid/agent/dqn_agent.hpp"
#include "fruitgrid/harness/metrics.hpp"

namespace fruitgrid {

struct RunConfig {
  AgentConfig agent;
  std::string out_dir = "out";
};

std::string run_csv_path(const std::string& out_dir, VariantId v, uint64_t seed);
std::string aggregate_csv_path(const std::string& out_dir, VariantId v);
std::string summary_csv_path(const std::string& out_dir);

// Prefill, then the configured number of training episodes; the metrics CSV
// lands at run_csv_path(). Deterministic in the config.
MetricsLog run(const RunConfig& cfg);

struct SweepConfig {
  std::vector<VariantId> variants;  // empty selects all 11
  std::vector<uint64_t> seeds;      // empty is an error
  AgentConfig base;                 // per-run overrides; variant/seed are set per job
  std::string out_dir = "out";
  int parallel = 0;  // <= 0 selects the hardware thread count
  bool verbose = true;
};

struct SweepResult {
  int runs_ok = 0;
  int runs_failed = 0;
  std::vector<std::string> failures;
};

// Runs every (variant, seed) pair on a worker pool, then writes per-variant
// aggregate curves and the summary table from whatever runs survived.
SweepResult sweep(const SweepConfig& cfg);

// Cross-seed aggregation of per-run CSVs already on disk.
struct VariantAggregate {
  VariantId variant = VariantId::GlobalNoCenter;
  int n_seeds = 0;
  std::vector<double> mean_running;  // per episode, mean over seeds of the running mean
  std::vector<double> std_running;   // sample std over seeds
  double final_running_mean = 0.0;
  double auc = 0.0;             // sum of mean_running over episodes
  double stability_mean = 0.0;  // mean over seeds of the per-run stability
  std::vector<uint64_t> seeds_used;
};

VariantAggregate aggregate_variant(const std::string& out_dir, VariantId v,
                                   const std::vector<uint64_t>& seeds);
void write_aggregate_csv(const VariantAggregate& agg, const std::string& path);
void write_summary_csv(const std::vector<VariantAggregate>& aggs, const std::string& path);

}  // namespace fruitgrid
