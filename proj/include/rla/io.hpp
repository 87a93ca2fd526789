#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rla/audit.hpp"
#include "rla/election.hpp"
#include "rla/generate.hpp"
#include "rla/reconcile.hpp"
#include "rla/retrieval.hpp"
#include "rla/simulate.hpp"

namespace rla {

// All parse errors throw std::runtime_error naming the offending file,
// line, and field.

// CVR file: JSON array of {"id": string|null, "phantom": bool,
// "votes": {contest: candidate | "undervote" | "overvote"}}.
std::vector<Cvr> parse_cvrs(const std::string& text, const std::string& filename = "cvrs");
std::string serialize_cvrs(const std::vector<Cvr>& cvrs);

// Card file (simulation only): JSON array of
// {"imprinted_id": string|null, "votes": {...}}.
std::vector<BallotCard> parse_cards(const std::string& text,
                                    const std::string& filename = "cards");
std::string serialize_cards(const std::vector<BallotCard>& cards);

// Manifest: CSV with header "contest_id,card_upper_bound".
std::map<std::string, std::int64_t> parse_manifest(const std::string& text,
                                                   const std::string& filename = "manifest");
std::string serialize_manifest(const std::vector<Contest>& contests);

// Contest definitions: JSON array of {"id", "social_choice", "candidates",
// "reported_winners", "risk_limit", ...}; card_upper_bound comes from the
// manifest.
std::vector<Contest> parse_contests(const std::string& text,
                                    const std::string& filename = "contests");
std::string serialize_contests(const std::vector<Contest>& contests);

// External assertions: {"contest_id", "assertions": [{"label", "u",
// "scores": {selection: value}, "default_score"?}]} or an array of such
// objects.
ExternalAssertionMap parse_external_assertions(const std::string& text,
                                               const std::string& filename = "assertions");

// Adversary spec: {"kind", "ids"?, "script"?, "adaptive"?}.
AdversarySpec parse_adversary(const std::string& text, const std::string& filename = "adversary");
std::string serialize_adversary(const AdversarySpec& spec);

// Audit config: {"seed", "scheme", "max_draws"?, "estimator": {"eta0":
// "auto"|number, "d", "c": "auto"|number, "eps"}}.
AuditConfig parse_audit_config(const std::string& text, const std::string& filename = "config");
std::string serialize_audit_config(const AuditConfig& config);

// Election generator spec; accepts "margin" as an alternative to explicit
// tallies for two-candidate contests.
GenSpec parse_gen_spec(const std::string& text, const std::string& filename = "genspec");

// Experiment spec: {"seed", "reps", "jobs"?, "scenarios": [...]}.
ExperimentSpec parse_experiment(const std::string& text,
                                const std::string& filename = "experiment");

// Live-audit manual vote records: {"<id>": {"outcome": "match" |
// "other_id" | "no_id" | "none", "votes": {...}}}; "outcome" defaults to
// "match". votes are required for "match" outcomes.
struct LiveRetrievalRecord {
  RetrievalOutcome outcome = RetrievalOutcome::card_with_requested_id;
  VoteRecord votes;
};
std::map<std::string, LiveRetrievalRecord> parse_mvr_file(const std::string& text,
                                                          const std::string& filename = "mvrs");

// Draw log: JSONL, one record per draw.
std::string draw_record_to_jsonl(const DrawRecord& record);

// Verdict report: {"verdict", "full_count_reason"?, "contests", "assertions",
// "total_draws", "reconciliation", "true_outcome"?}.
std::string verdict_report_json(const AuditState& state);

std::string summary_json(const std::vector<ScenarioSummary>& summaries);
std::string summary_csv(const std::vector<ScenarioSummary>& summaries);
std::string rep_results_jsonl(const ScenarioResult& result);

// Assembles an election from the four files; the manifest provides each
// contest's card_upper_bound and must cover every contest.
Election assemble_election(std::vector<Contest> contests,
                           std::map<std::string, std::int64_t> manifest, std::vector<Cvr> cvrs,
                           std::optional<std::vector<BallotCard>> cards);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rla
