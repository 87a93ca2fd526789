#include "rla/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rla/io.hpp"

namespace rla {

namespace fs = std::filesystem;

namespace {

struct MvrMissing : std::runtime_error {
  explicit MvrMissing(const std::string& id)
      : std::runtime_error("no manual vote record for id '" + id + "'"), requested_id(id) {}
  std::string requested_id;
};

// Live audit fed from a prepared file of retrieval outcomes and readings.
class FileCardSource : public CardSource {
 public:
  explicit FileCardSource(std::map<std::string, LiveRetrievalRecord> records)
      : records_(std::move(records)) {}

  RetrievalObservation fetch(const std::string& requested_id) override {
    auto it = records_.find(requested_id);
    if (it == records_.end()) throw MvrMissing(requested_id);
    RetrievalObservation obs;
    obs.outcome = it->second.outcome;
    if (obs.outcome == RetrievalOutcome::card_with_requested_id) {
      obs.mvr = it->second.votes;
    }
    return obs;
  }

 private:
  std::map<std::string, LiveRetrievalRecord> records_;
};

// Live audit with a human transcribing at the terminal. The prompts ask
// for the retrieval outcome and, for a matching card, the selection in
// each contest; the human never chooses what to sample.
class InteractiveCardSource : public CardSource {
 public:
  explicit InteractiveCardSource(const std::vector<Contest>& contests) : contests_(contests) {}

  RetrievalObservation fetch(const std::string& requested_id) override {
    std::cout << "\nretrieve card with id '" << requested_id << "'\n"
              << "outcome? [m]atching id / [o]ther id / [b]lank id / [n]o card: " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) throw MvrMissing(requested_id);
    RetrievalObservation obs;
    switch (line.empty() ? 'm' : line[0]) {
      case 'm':
        obs.outcome = RetrievalOutcome::card_with_requested_id;
        break;
      case 'o':
        obs.outcome = RetrievalOutcome::card_with_other_id;
        return obs;
      case 'b':
        obs.outcome = RetrievalOutcome::card_without_id;
        return obs;
      case 'n':
        obs.outcome = RetrievalOutcome::no_card;
        return obs;
      default:
        throw std::runtime_error("unrecognized outcome '" + line + "'");
    }
    VoteRecord votes;
    for (const Contest& contest : contests_) {
      std::cout << "  " << contest.id
                << " selection (candidate name, [u]ndervote, [o]vervote, [-] not on card): "
                << std::flush;
      if (!std::getline(std::cin, line)) throw MvrMissing(requested_id);
      if (line == "-") continue;
      if (line == "u" || line == "undervote" || line.empty()) {
        votes.selections.emplace(contest.id, Selection::undervote());
      } else if (line == "o" || line == "overvote") {
        votes.selections.emplace(contest.id, Selection::overvote());
      } else {
        votes.selections.emplace(contest.id, Selection::vote_for(line));
      }
    }
    obs.mvr = std::move(votes);
    return obs;
  }

 private:
  const std::vector<Contest>& contests_;
};

void ensure_dir(const std::string& dir) {
  if (dir.empty()) throw std::runtime_error("output directory required");
  fs::create_directories(dir);
}

int cmd_gen(const std::string& spec_path, const std::string& seed, const std::string& out_dir) {
  const GenSpec spec = parse_gen_spec(read_file(spec_path), spec_path);
  const Election election = generate_election(spec, seed);
  ensure_dir(out_dir);
  write_file(out_dir + "/cvrs.json", serialize_cvrs(election.cvrs));
  write_file(out_dir + "/cards.json", serialize_cards(*election.cards));
  write_file(out_dir + "/manifest.csv", serialize_manifest(election.contests));
  write_file(out_dir + "/contests.json", serialize_contests(election.contests));
  std::cout << "wrote " << election.cvrs.size() << " CVRs and " << election.cards->size()
            << " cards to " << out_dir << "\n";
  return 0;
}

void write_audit_outputs(const AuditState& state, const std::string& out_dir) {
  if (out_dir.empty()) return;
  ensure_dir(out_dir);
  std::string draws;
  for (const DrawRecord& record : state.draw_log) {
    draws += draw_record_to_jsonl(record);
    draws += '\n';
  }
  write_file(out_dir + "/draws.jsonl", draws);
  write_file(out_dir + "/report.json", verdict_report_json(state));
}

void print_audit_summary(const AuditState& state) {
  std::cout << "verdict: " << to_string(state.verdict);
  if (state.verdict == Verdict::full_hand_count) {
    std::cout << " (" << state.full_count_reason << ")";
  }
  std::cout << "\ndraws: " << state.total_draws() << "\n";
  if (state.plan != nullptr) {
    for (std::size_t k = 0; k < state.plan->assertions.size(); ++k) {
      const Assertion& a = state.plan->assertions[k];
      std::cout << "  " << a.key << ": margin " << a.oa.margin() << ", measured risk "
                << state.assertion_risk[k]
                << (state.assertion_confirmed[k] ? " [confirmed]" : " [not confirmed]") << "\n";
    }
  }
  for (const auto& [contest, winners] : state.true_outcome) {
    std::cout << "hand-count outcome for " << contest << ":";
    for (const std::string& w : winners) std::cout << " " << w;
    std::cout << "\n";
  }
}

int cmd_audit(const std::string& cvrs_path, const std::string& cards_path,
              const std::string& manifest_path, const std::string& contests_path,
              const std::string& config_path, const std::string& seed_override,
              const std::string& adversary_path, const std::string& mvr_path, bool interactive,
              const std::string& external_path, const std::string& out_dir) {
  AuditConfig config;
  if (!config_path.empty()) {
    config = parse_audit_config(read_file(config_path), config_path);
  }
  if (!seed_override.empty()) config.seed = seed_override;
  if (config.seed.empty()) {
    throw std::runtime_error("no seed: pass --seed or set it in the config file");
  }

  auto contests = parse_contests(read_file(contests_path), contests_path);
  auto manifest = parse_manifest(read_file(manifest_path), manifest_path);
  auto cvrs = parse_cvrs(read_file(cvrs_path), cvrs_path);
  std::optional<std::vector<BallotCard>> cards;
  if (!cards_path.empty()) {
    cards = parse_cards(read_file(cards_path), cards_path);
  }
  const Election election =
      assemble_election(std::move(contests), std::move(manifest), std::move(cvrs), std::move(cards));

  ExternalAssertionMap external;
  if (!external_path.empty()) {
    external = parse_external_assertions(read_file(external_path), external_path);
  }

  PreAuditResult pre = pre_audit_checks(election, external.empty() ? nullptr : &external);
  if (std::holds_alternative<FullCountVerdict>(pre)) {
    AuditState state;
    state.config = config;
    state.verdict = Verdict::full_hand_count;
    state.full_count_reason = std::get<FullCountVerdict>(pre).reason;
    if (election.simulation_mode()) state.true_outcome = true_outcome_from_cards(election);
    write_audit_outputs(state, out_dir);
    print_audit_summary(state);
    return 2;
  }
  auto plan = std::make_shared<const AuditPlan>(std::move(std::get<AuditPlan>(pre)));

  std::unique_ptr<Retriever> retriever;
  std::unique_ptr<CardSource> source;
  if (plan->election.simulation_mode()) {
    AdversarySpec adversary;  // honest unless an attack file says otherwise
    if (!adversary_path.empty()) {
      adversary = parse_adversary(read_file(adversary_path), adversary_path);
    }
    retriever = make_retriever(adversary, plan->election.cvrs);
    source = std::make_unique<SimulatedCardSource>(plan->election.cards.value(), *retriever);
  } else if (!mvr_path.empty()) {
    source = std::make_unique<FileCardSource>(parse_mvr_file(read_file(mvr_path), mvr_path));
  } else if (interactive) {
    source = std::make_unique<InteractiveCardSource>(plan->election.contests);
  } else {
    throw std::runtime_error(
        "live audit needs --mvr-file or --interactive (no ground-truth cards given)");
  }

  AuditRunner runner(plan, config);
  try {
    while (runner.step(*source)) {
    }
  } catch (const MvrMissing& e) {
    std::cerr << "audit aborted at draw " << runner.state().total_draws() + 1 << ": " << e.what()
              << "\n";
    return 1;
  }

  const AuditState& state = runner.state();
  write_audit_outputs(state, out_dir);
  print_audit_summary(state);
  return state.verdict == Verdict::all_confirmed ? 0 : 2;
}

int cmd_simulate(const std::string& spec_path, std::int64_t reps_override, int jobs_override,
                 const std::string& out_dir) {
  ExperimentSpec spec = parse_experiment(read_file(spec_path), spec_path);
  if (reps_override > 0) spec.reps = reps_override;
  if (jobs_override > 0) spec.jobs = jobs_override;

  const std::vector<ScenarioResult> results = run_experiment(spec);

  std::vector<ScenarioSummary> summaries;
  std::string reps_jsonl;
  nlohmann::json timing = nlohmann::json::object();
  for (const ScenarioResult& r : results) {
    summaries.push_back(r.summary);
    reps_jsonl += rep_results_jsonl(r);
    timing[r.summary.name] = r.summary.wall_ms;
  }
  ensure_dir(out_dir);
  write_file(out_dir + "/summary.json", summary_json(summaries));
  write_file(out_dir + "/summary.csv", summary_csv(summaries));
  write_file(out_dir + "/reps.jsonl", reps_jsonl);
  // Wall-clock timing is machine-dependent and lives outside the
  // deterministic outputs.
  write_file(out_dir + "/timing.json", timing.dump(2) + "\n");

  std::cout << summary_csv(summaries);
  return 0;
}

int cmd_report(const std::string& in_dir, const std::string& out_csv) {
  bool found = false;
  std::ostringstream csv;
  const fs::path report_path = fs::path(in_dir) / "report.json";
  if (fs::exists(report_path)) {
    found = true;
    const nlohmann::json report = nlohmann::json::parse(read_file(report_path.string()));
    std::cout << "audit verdict: " << report.at("verdict").get<std::string>() << " after "
              << report.at("total_draws") << " draws\n";
    csv << "assertion,margin,measured_risk,risk_limit,confirmed\n";
    std::cout << "assertion | margin | measured risk | risk limit | confirmed\n";
    if (report.contains("assertions")) {
      for (const auto& [key, a] : report.at("assertions").items()) {
        std::cout << key << " | " << a.at("margin").dump() << " | "
                  << a.at("measured_risk").dump() << " | " << a.at("risk_limit").dump() << " | "
                  << (a.at("confirmed").get<bool>() ? "yes" : "no") << "\n";
        csv << key << ',' << a.at("margin").dump() << ',' << a.at("measured_risk").dump() << ','
            << a.at("risk_limit").dump() << ',' << (a.at("confirmed").get<bool>() ? 1 : 0)
            << '\n';
      }
    }
  }
  const fs::path summary_path = fs::path(in_dir) / "summary.json";
  if (fs::exists(summary_path)) {
    found = true;
    const nlohmann::json summary = nlohmann::json::parse(read_file(summary_path.string()));
    csv << "name,reps,confirm_rate,full_count_rate,mean_draws,p50_draws,p90_draws,p99_draws,"
           "max_draws\n";
    std::cout << "scenario | reps | confirm rate | full-count rate | mean draws | p50 | p90 | "
                 "p99 | max\n";
    for (const auto& s : summary.at("scenarios")) {
      std::cout << s.at("name").get<std::string>() << " | " << s.at("reps") << " | "
                << s.at("confirm_rate").dump() << " | " << s.at("full_count_rate").dump() << " | "
                << s.at("mean_draws").dump() << " | " << s.at("p50_draws") << " | "
                << s.at("p90_draws") << " | " << s.at("p99_draws") << " | " << s.at("max_draws")
                << "\n";
      csv << s.at("name").get<std::string>() << ',' << s.at("reps") << ','
          << s.at("confirm_rate").dump() << ',' << s.at("full_count_rate").dump() << ','
          << s.at("mean_draws").dump() << ',' << s.at("p50_draws") << ',' << s.at("p90_draws")
          << ',' << s.at("p99_draws") << ',' << s.at("max_draws") << '\n';
    }
  }
  if (!found) {
    throw std::runtime_error("no report.json or summary.json found in '" + in_dir + "'");
  }
  if (!out_csv.empty()) write_file(out_csv, csv.str());
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"ballot-level comparison risk-limiting audits with untrusted card retrieval"};
  app.require_subcommand(1);

  std::string spec_path, seed, out_dir;
  auto* gen = app.add_subcommand("gen", "generate a synthetic election (CVRs, cards, manifest)");
  gen->add_option("--spec", spec_path, "generator spec JSON")->required();
  gen->add_option("--seed", seed, "PRNG seed")->required();
  gen->add_option("--out", out_dir, "output directory")->required();

  std::string cvrs_path, cards_path, manifest_path, contests_path, config_path, adversary_path,
      mvr_path, external_path;
  bool interactive = false;
  auto* audit = app.add_subcommand("audit", "run one audit (simulated or live)");
  audit->add_option("--cvrs", cvrs_path, "CVR file (JSON)")->required();
  audit->add_option("--manifest", manifest_path, "manifest CSV")->required();
  audit->add_option("--contests", contests_path, "contest definitions JSON")->required();
  audit->add_option("--cards", cards_path, "ground-truth cards JSON (simulation mode)");
  audit->add_option("--config", config_path, "audit config JSON");
  audit->add_option("--seed", seed, "PRNG seed (overrides config)");
  audit->add_option("--adversary", adversary_path, "retriever policy JSON (simulation mode)");
  audit->add_option("--mvr-file", mvr_path, "manual vote records JSON (live mode)");
  audit->add_flag("--interactive", interactive, "prompt for manual vote records (live mode)");
  audit->add_option("--external-assertions", external_path, "external assertions JSON");
  audit->add_option("--out", out_dir, "output directory for draw log and report");

  std::int64_t reps = 0;
  int jobs = 0;
  auto* simulate = app.add_subcommand("simulate", "run replicated audit experiments");
  simulate->add_option("--spec", spec_path, "experiment spec JSON")->required();
  simulate->add_option("--reps", reps, "override replication count");
  simulate->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  simulate->add_option("--out", out_dir, "output directory")->required();

  std::string in_dir, out_csv;
  auto* report = app.add_subcommand("report", "render audit/simulation results as tables");
  report->add_option("--in", in_dir, "results directory")->required();
  report->add_option("--out", out_csv, "also write a CSV table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(spec_path, seed, out_dir);
    if (audit->parsed()) {
      return cmd_audit(cvrs_path, cards_path, manifest_path, contests_path, config_path, seed,
                       adversary_path, mvr_path, interactive, external_path, out_dir);
    }
    if (simulate->parsed()) return cmd_simulate(spec_path, reps, jobs, out_dir);
    if (report->parsed()) return cmd_report(in_dir, out_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rla
