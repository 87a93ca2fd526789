#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rla/audit.hpp"
#include "rla/generate.hpp"
#include "rla/retrieval.hpp"

namespace rla {

// One audited scenario: an election recipe, a retriever policy, and the
// audit settings, replicated `reps` times with independent PRNG streams.
struct ScenarioSpec {
  std::string name;
  GenSpec gen;
  AdversarySpec adversary;
  SamplingScheme scheme = SamplingScheme::without_replacement;
  std::optional<std::int64_t> max_draws;
  EstimatorConfig estimator;
  // Regenerate the election per replication instead of auditing one fixed
  // election with fresh sampling randomness.
  bool regenerate_per_rep = false;
};

struct ExperimentSpec {
  std::string seed;
  std::int64_t reps = 1;
  int jobs = 0;  // 0 = all hardware threads
  std::vector<ScenarioSpec> scenarios;
};

struct RepResult {
  Verdict verdict = Verdict::in_progress;
  std::int64_t draws = 0;
};

struct ScenarioSummary {
  std::string name;
  std::int64_t reps = 0;
  std::int64_t confirmed = 0;
  std::int64_t full_counts = 0;
  double confirm_rate = 0.0;
  double full_count_rate = 0.0;
  double mean_draws = 0.0;
  std::int64_t p50_draws = 0;
  std::int64_t p90_draws = 0;
  std::int64_t p99_draws = 0;
  std::int64_t max_draws = 0;
  double wall_ms = 0.0;  // reported separately; never part of deterministic outputs
};

struct ScenarioResult {
  ScenarioSummary summary;
  std::vector<RepResult> reps;
};

// Deterministic aggregation used both by the runner and by consumers that
// recompute statistics from raw per-rep records.
ScenarioSummary summarize_reps(const std::string& name, const std::vector<RepResult>& reps);

// Replication r of scenario s uses seed "<experiment seed>:<scenario
// name>" and audit stream "rep:<r>", so distinct replications and
// scenarios never share draw sequences. Results are independent of the
// worker count.
ScenarioResult run_scenario(const ScenarioSpec& scenario, const std::string& experiment_seed,
                            std::int64_t reps, int jobs);

std::vector<ScenarioResult> run_experiment(const ExperimentSpec& spec);

}  // namespace rla
