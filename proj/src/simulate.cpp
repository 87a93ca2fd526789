#include "rla/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rla/reconcile.hpp"

namespace rla {

namespace {

std::int64_t nearest_rank(const std::vector<std::int64_t>& sorted, double q) {
  if (sorted.empty()) return 0;
  const auto rank = static_cast<std::size_t>(
      std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                    std::ceil(q * static_cast<double>(sorted.size())))));
  return sorted[std::min(rank, sorted.size()) - 1];
}

}  // namespace

ScenarioSummary summarize_reps(const std::string& name, const std::vector<RepResult>& reps) {
  ScenarioSummary s;
  s.name = name;
  s.reps = static_cast<std::int64_t>(reps.size());
  std::vector<std::int64_t> draws;
  draws.reserve(reps.size());
  double total = 0.0;
  for (const RepResult& r : reps) {
    if (r.verdict == Verdict::all_confirmed) ++s.confirmed;
    if (r.verdict == Verdict::full_hand_count) ++s.full_counts;
    draws.push_back(r.draws);
    total += static_cast<double>(r.draws);
  }
  std::sort(draws.begin(), draws.end());
  if (!reps.empty()) {
    const auto n = static_cast<double>(reps.size());
    s.confirm_rate = static_cast<double>(s.confirmed) / n;
    s.full_count_rate = static_cast<double>(s.full_counts) / n;
    s.mean_draws = total / n;
    s.p50_draws = nearest_rank(draws, 0.50);
    s.p90_draws = nearest_rank(draws, 0.90);
    s.p99_draws = nearest_rank(draws, 0.99);
    s.max_draws = draws.back();
  }
  return s;
}

ScenarioResult run_scenario(const ScenarioSpec& scenario, const std::string& experiment_seed,
                            std::int64_t reps, int jobs) {
  if (reps < 1) throw std::invalid_argument("run_scenario: reps must be >= 1");
  const std::string seed = experiment_seed + ":" + scenario.name;

  AuditConfig base_config;
  base_config.seed = seed;
  base_config.scheme = scenario.scheme;
  base_config.max_draws = scenario.max_draws;
  base_config.estimator = scenario.estimator;

  // One fixed election and frozen plan shared by every replication unless
  // the scenario regenerates per rep.
  std::shared_ptr<const AuditPlan> shared_plan;
  if (!scenario.regenerate_per_rep) {
    const Election election = generate_election(scenario.gen, seed, "gen");
    PreAuditResult pre = pre_audit_checks(election);
    if (std::holds_alternative<AuditPlan>(pre)) {
      shared_plan = std::make_shared<const AuditPlan>(std::move(std::get<AuditPlan>(pre)));
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<RepResult> results(static_cast<std::size_t>(reps));
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::int64_t r = next.fetch_add(1);
      if (r >= reps || failed.load()) return;
      try {
        AuditConfig config = base_config;
        config.stream_label = "rep:" + std::to_string(r);
        RepResult rep;
        if (scenario.regenerate_per_rep) {
          const Election election =
              generate_election(scenario.gen, seed, "gen:rep:" + std::to_string(r));
          auto retriever = make_retriever(scenario.adversary, election.cvrs);
          const AuditState state = run_audit(election, config, *retriever);
          rep.verdict = state.verdict;
          rep.draws = state.total_draws();
        } else if (shared_plan != nullptr) {
          auto retriever = make_retriever(scenario.adversary, shared_plan->election.cvrs);
          SimulatedCardSource source(shared_plan->election.cards.value(), *retriever);
          AuditRunner runner(shared_plan, config);
          runner.run(source);
          rep.verdict = runner.state().verdict;
          rep.draws = runner.state().total_draws();
        } else {
          rep.verdict = Verdict::full_hand_count;  // pre-checks failed for the fixed election
          rep.draws = 0;
        }
        results[static_cast<std::size_t>(r)] = rep;
      } catch (const std::exception& e) {
        const std::scoped_lock lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
        return;
      }
    }
  };

  int n_jobs = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  if (n_jobs < 1) n_jobs = 1;
  n_jobs = static_cast<int>(std::min<std::int64_t>(n_jobs, reps));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(n_jobs));
  for (int t = 0; t < n_jobs; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (failed.load()) {
    throw std::runtime_error("scenario '" + scenario.name + "': " + failure);
  }

  ScenarioResult out;
  out.reps = std::move(results);
  out.summary = summarize_reps(scenario.name, out.reps);
  out.summary.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  return out;
}

std::vector<ScenarioResult> run_experiment(const ExperimentSpec& spec) {
  if (spec.scenarios.empty()) {
    throw std::invalid_argument("run_experiment: no scenarios");
  }
  std::vector<ScenarioResult> out;
  out.reserve(spec.scenarios.size());
  for (const ScenarioSpec& scenario : spec.scenarios) {
    out.push_back(run_scenario(scenario, spec.seed, spec.reps, spec.jobs));
  }
  return out;
}

}  // namespace rla
