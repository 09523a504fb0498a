#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/strategies.hpp"

// Configuration-driven experiment runner: replicated simulations with
// checkpointed metrics, deterministic aggregation and a fixed-schema CSV.
// Replication r of algorithm `label` always draws from the stream
// fnv1a(label) + r of the configured base seed, so results depend on the
// configuration alone, never on scheduling or worker count.

namespace banditlab {

struct AlgorithmSpec {
  std::string label;     // CSV algorithm column; [A-Za-z0-9_-]+
  std::string strategy;  // make_strategy kind; defaults to the label
  std::map<std::string, std::string> params;
};

struct ExperimentConfig {
  std::vector<double> arm_biases{0.5, 0.6};
  std::int64_t horizon = 10000;
  std::int64_t replications = 1000;
  std::vector<AlgorithmSpec> algorithms;
  double delta = 0.05;
  std::uint64_t base_seed = 1;
  std::int64_t checkpoint_dense_until = 1000;
  double checkpoint_ratio = 1.05;
  std::string output_dir = "out";

  // Rejects invalid fields and unresolvable algorithms before any run
  // starts; strategy construction problems surface here.
  void validate() const;
  std::vector<std::int64_t> checkpoints() const;
};

// Flat key = value text; '#' lines are comments. Arrays are comma-separated.
// Algorithm parameters use dotted keys (<label>.<param>); the reserved
// parameter `strategy` picks the strategy kind. Unknown or duplicate keys
// are errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
// Bundled study setups: exp1, exp2, exp2-desk.
ExperimentConfig preset_config(const std::string& name);

// Per-replication record at one checkpoint. Per-arm vectors are filled only
// while the strategy supports the weighted estimator; they are empty for
// point-mass players whose importance weights are undefined.
struct CheckpointRow {
  std::int64_t t = 0;
  double pseudo_regret = 0.0;    // sum of gaps of the arms actually pulled
  double expected_regret = 0.0;  // sum of gaps of the distributions played
  // Played-policy-weighted cumulative variance / (2 K t); the CSV carries
  // the relaxed tracker, the exact tracker stays here for diagnostics.
  double norm_variance = 0.0;
  double norm_variance_exact = 0.0;
  std::int64_t subopt_pulls = 0;
  // Exploration floor the bound columns evaluate at: the schedule value for
  // spectrum players, the running guaranteed floor otherwise; NaN without
  // a floor.
  double bound_epsilon = 0.0;
  std::vector<double> policy;
  std::vector<double> empirical_means;
  std::vector<double> exact_variance;
  std::vector<double> relaxed_variance;
};

struct RunTrace {
  std::string algorithm;
  std::uint64_t stream_id = 0;
  std::vector<CheckpointRow> rows;
  // Checkpoints (x arms) where the exact variance exceeded the 2t/eps cap.
  std::int64_t variance_cap_violations = 0;
  // Checkpoints at floor-condition rounds where some arm's empirical regret
  // deviated beyond the closed-form width.
  std::int64_t deviation_violations = 0;
  // Rounds where the played policy dipped under the strategy's stated floor.
  std::int64_t floor_violations = 0;
};

std::uint64_t replication_stream(const std::string& label, std::int64_t replication);

RunTrace run_replication(const ExperimentConfig& config, const AlgorithmSpec& algo,
                         std::int64_t replication);

// Aggregated per-checkpoint series for one algorithm; exactly the CSV
// content. std uses the unbiased M-1 denominator and is 0 for M = 1.
struct AggregateSeries {
  std::string algorithm;
  std::int64_t replications = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> pseudo_regret_mean;
  std::vector<double> pseudo_regret_std;
  std::vector<double> expected_regret_mean;
  std::vector<double> expected_regret_std;
  std::vector<double> norm_variance_mean;
  std::vector<double> norm_variance_std;
  std::vector<double> subopt_pulls_mean;
  std::vector<double> theorem2_bound;
  std::vector<double> theorem3_bound;
  std::vector<int> eq5_satisfied;
};

struct AggregateSummary {
  std::uint64_t base_seed = 0;
  std::vector<AggregateSeries> series;
};

// Sanity counters accumulated during the runs; not part of the CSV.
struct AlgorithmDiagnostics {
  std::string algorithm;
  std::int64_t variance_cap_violations = 0;
  std::int64_t deviation_violation_runs = 0;  // runs with any width violation
  std::int64_t floor_violations = 0;
  std::vector<double> variance_cap;  // 2t/eps per checkpoint, NaN without a floor
  bool single_replication = false;
};

struct ExperimentResult {
  AggregateSummary summary;
  std::vector<AlgorithmDiagnostics> diagnostics;
};

// Folds replication traces in the given order; all traces of one algorithm
// must share the checkpoint schedule and come grouped in replication order.
ExperimentResult aggregate(const ExperimentConfig& config, const std::vector<RunTrace>& runs);

// Runs replications on `workers` threads and aggregates in replication
// order regardless of completion order.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers);

// Fixed 14-column schema, floats with 17 significant digits.
std::string csv_text(const AggregateSummary& summary);
void emit_csv(const AggregateSummary& summary, const std::string& path);
AggregateSummary parse_csv_text(const std::string& text);
AggregateSummary load_csv(const std::string& path);

}  // namespace banditlab
