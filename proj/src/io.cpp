#include "rla/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rla {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& filename, const std::string& what) {
  throw std::runtime_error(filename + ": " + what);
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(
                                              std::min(offset, text.size())),
                            '\n'));
}

json parse_json(const std::string& text, const std::string& filename) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(filename, "line " + std::to_string(line_of_offset(text, e.byte)) +
                       ": " + e.what());
  }
}

const json& require(const json& j, const char* field, const std::string& filename,
                    const std::string& context) {
  auto it = j.find(field);
  if (it == j.end()) fail(filename, context + ": missing field '" + field + "'");
  return *it;
}

Selection parse_selection(const json& j, const std::string& filename,
                          const std::string& context) {
  if (!j.is_string()) fail(filename, context + ": selection must be a string");
  const std::string s = j.get<std::string>();
  if (s == "undervote") return Selection::undervote();
  if (s == "overvote") return Selection::overvote();
  return Selection::vote_for(s);
}

VoteRecord parse_votes(const json& j, const std::string& filename, const std::string& context) {
  if (!j.is_object()) fail(filename, context + ": 'votes' must be an object");
  VoteRecord votes;
  for (auto it = j.begin(); it != j.end(); ++it) {
    votes.selections.emplace(it.key(),
                             parse_selection(it.value(), filename, context + ".votes"));
  }
  return votes;
}

json votes_to_json(const VoteRecord& votes) {
  json j = json::object();
  for (const auto& [contest, sel] : votes.selections) {
    j[contest] = sel.table_key();
  }
  return j;
}

SocialChoice parse_social_choice(const json& j, const std::string& filename,
                                 const std::string& context) {
  SocialChoice sc;
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object()) {
    kind = require(j, "kind", filename, context).get<std::string>();
    if (j.contains("num_winners")) sc.num_winners = j["num_winners"].get<int>();
    if (j.contains("threshold")) sc.threshold = j["threshold"].get<double>();
  } else {
    fail(filename, context + ": social_choice must be a string or object");
  }
  if (kind == "plurality") {
    sc.kind = SocialChoice::Kind::plurality;
  } else if (kind == "multiwinner_plurality") {
    sc.kind = SocialChoice::Kind::multiwinner_plurality;
  } else if (kind == "supermajority") {
    sc.kind = SocialChoice::Kind::supermajority;
  } else if (kind == "external_assertions") {
    sc.kind = SocialChoice::Kind::external_assertions;
  } else {
    fail(filename, context + ": unknown social choice '" + kind + "'");
  }
  return sc;
}

json social_choice_to_json(const SocialChoice& sc) {
  json j = json::object();
  switch (sc.kind) {
    case SocialChoice::Kind::plurality:
      j["kind"] = "plurality";
      break;
    case SocialChoice::Kind::multiwinner_plurality:
      j["kind"] = "multiwinner_plurality";
      j["num_winners"] = sc.num_winners;
      break;
    case SocialChoice::Kind::supermajority:
      j["kind"] = "supermajority";
      j["threshold"] = sc.threshold;
      break;
    case SocialChoice::Kind::external_assertions:
      j["kind"] = "external_assertions";
      break;
  }
  return j;
}

}  // namespace

std::vector<Cvr> parse_cvrs(const std::string& text, const std::string& filename) {
  const json root = parse_json(text, filename);
  if (!root.is_array()) fail(filename, "expected a JSON array of CVRs");
  std::vector<Cvr> out;
  out.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& j = root[i];
    const std::string context = "cvr[" + std::to_string(i) + "]";
    if (!j.is_object()) fail(filename, context + ": expected an object");
    Cvr cvr;
    if (j.contains("id") && !j["id"].is_null()) cvr.id = j["id"].get<std::string>();
    if (j.contains("phantom")) cvr.phantom = j["phantom"].get<bool>();
    cvr.votes = parse_votes(require(j, "votes", filename, context), filename, context);
    out.push_back(std::move(cvr));
  }
  return out;
}

std::string serialize_cvrs(const std::vector<Cvr>& cvrs) {
  json root = json::array();
  for (const Cvr& cvr : cvrs) {
    json j;
    j["id"] = cvr.id.has_value() ? json(*cvr.id) : json(nullptr);
    j["phantom"] = cvr.phantom;
    j["votes"] = votes_to_json(cvr.votes);
    root.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

std::vector<BallotCard> parse_cards(const std::string& text, const std::string& filename) {
  const json root = parse_json(text, filename);
  if (!root.is_array()) fail(filename, "expected a JSON array of cards");
  std::vector<BallotCard> out;
  out.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& j = root[i];
    const std::string context = "card[" + std::to_string(i) + "]";
    if (!j.is_object()) fail(filename, context + ": expected an object");
    BallotCard card;
    if (j.contains("imprinted_id") && !j["imprinted_id"].is_null()) {
      card.imprinted_id = j["imprinted_id"].get<std::string>();
    }
    card.true_votes = parse_votes(require(j, "votes", filename, context), filename, context);
    out.push_back(std::move(card));
  }
  return out;
}

std::string serialize_cards(const std::vector<BallotCard>& cards) {
  json root = json::array();
  for (const BallotCard& card : cards) {
    json j;
    j["imprinted_id"] = card.imprinted_id.has_value() ? json(*card.imprinted_id) : json(nullptr);
    j["votes"] = votes_to_json(card.true_votes);
    root.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

std::map<std::string, std::int64_t> parse_manifest(const std::string& text,
                                                   const std::string& filename) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::int64_t> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "contest_id,card_upper_bound") {
        fail(filename, "line 1: expected header 'contest_id,card_upper_bound'");
      }
      continue;
    }
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      fail(filename, "line " + std::to_string(line_no) + ": expected 'contest_id,count'");
    }
    const std::string contest = line.substr(0, comma);
    std::int64_t count = 0;
    try {
      count = std::stoll(line.substr(comma + 1));
    } catch (const std::exception&) {
      fail(filename, "line " + std::to_string(line_no) + ": bad card count");
    }
    if (count < 0) fail(filename, "line " + std::to_string(line_no) + ": negative card count");
    if (!out.emplace(contest, count).second) {
      fail(filename, "line " + std::to_string(line_no) + ": duplicate contest '" + contest + "'");
    }
  }
  if (line_no == 0) fail(filename, "empty manifest");
  return out;
}

std::string serialize_manifest(const std::vector<Contest>& contests) {
  std::string out = "contest_id,card_upper_bound\n";
  for (const Contest& contest : contests) {
    out += contest.id + "," + std::to_string(contest.card_upper_bound) + "\n";
  }
  return out;
}

std::vector<Contest> parse_contests(const std::string& text, const std::string& filename) {
  const json root = parse_json(text, filename);
  if (!root.is_array()) fail(filename, "expected a JSON array of contests");
  std::vector<Contest> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& j = root[i];
    const std::string context = "contest[" + std::to_string(i) + "]";
    Contest contest;
    contest.id = require(j, "id", filename, context).get<std::string>();
    if (j.contains("social_choice")) {
      contest.social_choice = parse_social_choice(j["social_choice"], filename, context);
    }
    contest.candidates =
        require(j, "candidates", filename, context).get<std::vector<std::string>>();
    contest.reported_winners =
        require(j, "reported_winners", filename, context).get<std::vector<std::string>>();
    if (j.contains("risk_limit")) contest.risk_limit = j["risk_limit"].get<double>();
    if (j.contains("card_upper_bound")) {
      contest.card_upper_bound = j["card_upper_bound"].get<std::int64_t>();
    }
    out.push_back(std::move(contest));
  }
  return out;
}

std::string serialize_contests(const std::vector<Contest>& contests) {
  json root = json::array();
  for (const Contest& contest : contests) {
    json j;
    j["id"] = contest.id;
    j["social_choice"] = social_choice_to_json(contest.social_choice);
    j["candidates"] = contest.candidates;
    j["reported_winners"] = contest.reported_winners;
    j["risk_limit"] = contest.risk_limit;
    root.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

ExternalAssertionMap parse_external_assertions(const std::string& text,
                                               const std::string& filename) {
  const json root = parse_json(text, filename);
  ExternalAssertionMap out;
  const json entries = root.is_array() ? root : json::array({root});
  for (const json& entry : entries) {
    const std::string contest_id =
        require(entry, "contest_id", filename, "assertions").get<std::string>();
    std::vector<Assorter> assorters;
    for (const json& a : require(entry, "assertions", filename, contest_id)) {
      const std::string label = require(a, "label", filename, contest_id).get<std::string>();
      const double u = require(a, "u", filename, contest_id + "/" + label).get<double>();
      std::map<std::string, double> scores;
      const json& score_obj = require(a, "scores", filename, contest_id + "/" + label);
      for (auto it = score_obj.begin(); it != score_obj.end(); ++it) {
        scores[it.key()] = it.value().get<double>();
      }
      const double def = a.contains("default_score") ? a["default_score"].get<double>() : 0.5;
      assorters.emplace_back(contest_id, label, u, std::move(scores), def);
    }
    out[contest_id] = std::move(assorters);
  }
  return out;
}

AdversarySpec parse_adversary(const std::string& text, const std::string& filename) {
  const json j = parse_json(text, filename);
  AdversarySpec spec;
  const std::string kind = require(j, "kind", filename, "adversary").get<std::string>();
  if (kind == "honest") {
    spec.kind = AdversarySpec::Kind::honest;
  } else if (kind == "duplicate_exploit") {
    spec.kind = AdversarySpec::Kind::duplicate_exploit;
  } else if (kind == "withhold") {
    spec.kind = AdversarySpec::Kind::withhold;
    if (j.contains("ids") && !j["ids"].is_null()) {
      spec.withhold_ids = j["ids"].get<std::vector<std::string>>();
    }
  } else if (kind == "wrong_card") {
    spec.kind = AdversarySpec::Kind::wrong_card;
  } else if (kind == "blank_card") {
    spec.kind = AdversarySpec::Kind::blank_card;
  } else if (kind == "scripted") {
    spec.kind = AdversarySpec::Kind::scripted;
    if (j.contains("script")) {
      const json& script = j["script"];
      for (auto it = script.begin(); it != script.end(); ++it) {
        if (it.value().is_null()) {
          spec.script[it.key()] = std::nullopt;
        } else {
          spec.script[it.key()] = it.value().get<std::size_t>();
        }
      }
    }
  } else {
    fail(filename, "unknown adversary kind '" + kind + "'");
  }
  if (j.contains("adaptive")) spec.adaptive = j["adaptive"].get<bool>();
  return spec;
}

std::string serialize_adversary(const AdversarySpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  if (spec.withhold_ids.has_value()) j["ids"] = *spec.withhold_ids;
  if (!spec.script.empty()) {
    json script = json::object();
    for (const auto& [id, idx] : spec.script) {
      script[id] = idx.has_value() ? json(*idx) : json(nullptr);
    }
    j["script"] = std::move(script);
  }
  j["adaptive"] = spec.adaptive;
  return j.dump(2) + "\n";
}

namespace {

EstimatorConfig parse_estimator(const json& j, const std::string& filename) {
  EstimatorConfig est;
  if (j.contains("eta0") && !j["eta0"].is_string()) est.eta0 = j["eta0"].get<double>();
  if (j.contains("d")) est.d = j["d"].get<double>();
  if (j.contains("c") && !j["c"].is_string()) est.c = j["c"].get<double>();
  if (j.contains("eps")) est.eps = j["eps"].get<double>();
  if (j.contains("eta0") && j["eta0"].is_string() && j["eta0"] != "auto") {
    fail(filename, "estimator.eta0 must be a number or \"auto\"");
  }
  if (j.contains("c") && j["c"].is_string() && j["c"] != "auto") {
    fail(filename, "estimator.c must be a number or \"auto\"");
  }
  return est;
}

SamplingScheme parse_scheme(const json& j, const std::string& filename) {
  const std::string s = j.get<std::string>();
  if (s == "with_replacement") return SamplingScheme::with_replacement;
  if (s == "without_replacement") return SamplingScheme::without_replacement;
  fail(filename, "unknown sampling scheme '" + s + "'");
}

}  // namespace

AuditConfig parse_audit_config(const std::string& text, const std::string& filename) {
  const json j = parse_json(text, filename);
  AuditConfig config;
  if (j.contains("seed")) config.seed = j["seed"].get<std::string>();
  if (j.contains("scheme")) config.scheme = parse_scheme(j["scheme"], filename);
  if (j.contains("max_draws") && !j["max_draws"].is_null()) {
    config.max_draws = j["max_draws"].get<std::int64_t>();
  }
  if (j.contains("estimator")) config.estimator = parse_estimator(j["estimator"], filename);
  return config;
}

std::string serialize_audit_config(const AuditConfig& config) {
  json j;
  j["seed"] = config.seed;
  j["scheme"] = to_string(config.scheme);
  j["max_draws"] = config.max_draws.has_value() ? json(*config.max_draws) : json(nullptr);
  json est;
  est["eta0"] = config.estimator.eta0.has_value() ? json(*config.estimator.eta0) : json("auto");
  est["d"] = config.estimator.d;
  est["c"] = config.estimator.c.has_value() ? json(*config.estimator.c) : json("auto");
  est["eps"] = config.estimator.eps;
  j["estimator"] = std::move(est);
  return j.dump(2) + "\n";
}

GenSpec parse_gen_spec(const std::string& text, const std::string& filename) {
  const json j = parse_json(text, filename);
  return [&]() -> GenSpec {
    GenSpec spec;
    if (j.contains("contest")) spec.contest_id = j["contest"].get<std::string>();
    spec.candidates = require(j, "candidates", filename, "genspec").get<std::vector<std::string>>();
    spec.n_cards = require(j, "n_cards", filename, "genspec").get<std::int64_t>();
    if (j.contains("social_choice")) {
      spec.social_choice = parse_social_choice(j["social_choice"], filename, "genspec");
    }
    if (j.contains("true_tallies")) {
      spec.true_tallies = j["true_tallies"].get<std::map<std::string, std::int64_t>>();
    } else if (j.contains("margin")) {
      if (spec.candidates.size() != 2) {
        fail(filename, "'margin' shorthand requires exactly two candidates");
      }
      spec.true_tallies = two_candidate_tallies(spec.n_cards, j["margin"].get<double>(),
                                                spec.candidates[0], spec.candidates[1]);
    } else {
      fail(filename, "genspec: missing field 'true_tallies' (or 'margin')");
    }
    if (j.contains("cvr_tallies")) {
      spec.cvr_tallies = j["cvr_tallies"].get<std::map<std::string, std::int64_t>>();
    } else if (j.contains("cvr_margin")) {
      if (spec.candidates.size() != 2) {
        fail(filename, "'cvr_margin' shorthand requires exactly two candidates");
      }
      spec.cvr_tallies = two_candidate_tallies(spec.n_cards, j["cvr_margin"].get<double>(),
                                               spec.candidates[0], spec.candidates[1]);
    }
    if (j.contains("cvr_error_rate")) spec.cvr_error_rate = j["cvr_error_rate"].get<double>();
    if (j.contains("reported_winners")) {
      spec.reported_winners = j["reported_winners"].get<std::vector<std::string>>();
    }
    if (j.contains("imprinting")) {
      const std::string s = j["imprinting"].get<std::string>();
      if (s == "unique") {
        spec.imprinting = GenSpec::Imprint::unique;
      } else if (s == "match_votes") {
        spec.imprinting = GenSpec::Imprint::match_votes;
      } else if (s == "none") {
        spec.imprinting = GenSpec::Imprint::none;
      } else {
        fail(filename, "unknown imprinting mode '" + s + "'");
      }
    }
    if (j.contains("risk_limit")) spec.risk_limit = j["risk_limit"].get<double>();
    if (j.contains("extra_cvrs")) spec.extra_cvrs = j["extra_cvrs"].get<std::int64_t>();
    if (j.contains("missing_cvrs")) spec.missing_cvrs = j["missing_cvrs"].get<std::int64_t>();
    return spec;
  }();
}

ExperimentSpec parse_experiment(const std::string& text, const std::string& filename) {
  const json j = parse_json(text, filename);
  ExperimentSpec spec;
  spec.seed = require(j, "seed", filename, "experiment").get<std::string>();
  spec.reps = require(j, "reps", filename, "experiment").get<std::int64_t>();
  if (j.contains("jobs")) spec.jobs = j["jobs"].get<int>();
  for (const json& s : require(j, "scenarios", filename, "experiment")) {
    ScenarioSpec scenario;
    scenario.name = require(s, "name", filename, "scenario").get<std::string>();
    scenario.gen = parse_gen_spec(require(s, "election", filename, scenario.name).dump(),
                                  filename + ":" + scenario.name);
    if (s.contains("adversary")) {
      scenario.adversary =
          parse_adversary(s["adversary"].dump(), filename + ":" + scenario.name);
    }
    if (s.contains("scheme")) scenario.scheme = parse_scheme(s["scheme"], filename);
    if (s.contains("max_draws") && !s["max_draws"].is_null()) {
      scenario.max_draws = s["max_draws"].get<std::int64_t>();
    }
    if (s.contains("estimator")) {
      scenario.estimator = parse_estimator(s["estimator"], filename);
    }
    if (s.contains("regenerate_per_rep")) {
      scenario.regenerate_per_rep = s["regenerate_per_rep"].get<bool>();
    }
    spec.scenarios.push_back(std::move(scenario));
  }
  if (spec.scenarios.empty()) fail(filename, "experiment: no scenarios");
  return spec;
}

std::map<std::string, LiveRetrievalRecord> parse_mvr_file(const std::string& text,
                                                          const std::string& filename) {
  const json root = parse_json(text, filename);
  if (!root.is_object()) fail(filename, "expected an object keyed by requested id");
  std::map<std::string, LiveRetrievalRecord> out;
  for (auto it = root.begin(); it != root.end(); ++it) {
    const json& j = it.value();
    LiveRetrievalRecord record;
    std::string outcome = "match";
    if (j.contains("outcome")) outcome = j["outcome"].get<std::string>();
    if (outcome == "match") {
      record.outcome = RetrievalOutcome::card_with_requested_id;
      record.votes = parse_votes(require(j, "votes", filename, it.key()), filename, it.key());
    } else if (outcome == "other_id") {
      record.outcome = RetrievalOutcome::card_with_other_id;
    } else if (outcome == "no_id") {
      record.outcome = RetrievalOutcome::card_without_id;
    } else if (outcome == "none") {
      record.outcome = RetrievalOutcome::no_card;
    } else {
      fail(filename, it.key() + ": unknown outcome '" + outcome + "'");
    }
    out[it.key()] = std::move(record);
  }
  return out;
}

std::string draw_record_to_jsonl(const DrawRecord& record) {
  json j;
  j["draw"] = record.draw;
  j["id"] = record.id.has_value() ? json(*record.id) : json(nullptr);
  j["phantom"] = record.phantom;
  j["cached"] = record.cached;
  j["outcome"] = record.phantom ? "phantom" : to_string(record.outcome);
  json updates = json::object();
  for (const AssertionUpdate& u : record.updates) {
    updates[u.key] = json{{"L", u.l_value}, {"risk", u.risk}};
  }
  j["assertions"] = std::move(updates);
  return j.dump();
}

namespace {

json reconciliation_to_json(const ReconciliationReport& report) {
  json j;
  j["contest_id"] = report.contest_id;
  j["n_cards"] = report.n_cards;
  j["n_cvrs"] = report.n_cvrs;
  switch (report.action) {
    case ReconciliationReport::Action::none:
      j["action"] = "none";
      break;
    case ReconciliationReport::Action::contest_removed:
      j["action"] = "contest_removed";
      j["removed_from_cvr_ids"] = report.removed_from_cvr_ids;
      break;
    case ReconciliationReport::Action::phantoms_added:
      j["action"] = "phantoms_added";
      j["phantoms_added"] = report.phantoms_added;
      break;
  }
  j["post_cvr_means"] = report.post_cvr_means;
  return j;
}

}  // namespace

std::string verdict_report_json(const AuditState& state) {
  json j;
  j["verdict"] = to_string(state.verdict);
  if (state.verdict == Verdict::full_hand_count) {
    j["full_count_reason"] = state.full_count_reason;
  }
  j["total_draws"] = state.total_draws();
  json contests = json::object();
  for (const auto& [contest_id, confirmed] : state.contest_confirmed) {
    contests[contest_id] = json{{"confirmed", confirmed}};
  }
  j["contests"] = std::move(contests);
  json assertions = json::object();
  if (state.plan != nullptr) {
    for (std::size_t k = 0; k < state.plan->assertions.size(); ++k) {
      const Assertion& a = state.plan->assertions[k];
      assertions[a.key] = json{{"contest", a.contest_id},
                               {"margin", a.oa.margin()},
                               {"upper_bound", a.oa.upper_bound()},
                               {"population_size", a.population_size},
                               {"risk_limit", a.risk_limit},
                               {"measured_risk", state.assertion_risk[k]},
                               {"confirmed", bool(state.assertion_confirmed[k])}};
    }
    json recon = json::array();
    for (const ReconciliationReport& r : state.plan->reconciliation) {
      recon.push_back(reconciliation_to_json(r));
    }
    j["reconciliation"] = std::move(recon);
  }
  j["assertions"] = std::move(assertions);
  if (!state.true_outcome.empty()) {
    j["true_outcome"] = state.true_outcome;
  }
  return j.dump(2) + "\n";
}

std::string summary_json(const std::vector<ScenarioSummary>& summaries) {
  json arr = json::array();
  for (const ScenarioSummary& s : summaries) {
    arr.push_back(json{{"name", s.name},
                       {"reps", s.reps},
                       {"confirmed", s.confirmed},
                       {"full_counts", s.full_counts},
                       {"confirm_rate", s.confirm_rate},
                       {"full_count_rate", s.full_count_rate},
                       {"mean_draws", s.mean_draws},
                       {"p50_draws", s.p50_draws},
                       {"p90_draws", s.p90_draws},
                       {"p99_draws", s.p99_draws},
                       {"max_draws", s.max_draws}});
  }
  return json{{"scenarios", std::move(arr)}}.dump(2) + "\n";
}

std::string summary_csv(const std::vector<ScenarioSummary>& summaries) {
  std::ostringstream out;
  out << "name,reps,confirmed,full_counts,confirm_rate,full_count_rate,"
         "mean_draws,p50_draws,p90_draws,p99_draws,max_draws\n";
  for (const ScenarioSummary& s : summaries) {
    out << s.name << ',' << s.reps << ',' << s.confirmed << ',' << s.full_counts << ','
        << json(s.confirm_rate).dump() << ',' << json(s.full_count_rate).dump() << ','
        << json(s.mean_draws).dump() << ',' << s.p50_draws << ',' << s.p90_draws << ','
        << s.p99_draws << ',' << s.max_draws << '\n';
  }
  return out.str();
}

std::string rep_results_jsonl(const ScenarioResult& result) {
  std::string out;
  for (std::size_t r = 0; r < result.reps.size(); ++r) {
    json j;
    j["scenario"] = result.summary.name;
    j["rep"] = r;
    j["verdict"] = to_string(result.reps[r].verdict);
    j["draws"] = result.reps[r].draws;
    out += j.dump();
    out += '\n';
  }
  return out;
}

Election assemble_election(std::vector<Contest> contests,
                           std::map<std::string, std::int64_t> manifest, std::vector<Cvr> cvrs,
                           std::optional<std::vector<BallotCard>> cards) {
  for (Contest& contest : contests) {
    auto it = manifest.find(contest.id);
    if (it == manifest.end()) {
      throw std::runtime_error("manifest: no card_upper_bound for contest '" + contest.id + "'");
    }
    contest.card_upper_bound = it->second;
  }
  Election election;
  election.contests = std::move(contests);
  election.cvrs = std::move(cvrs);
  election.cards = std::move(cards);
  return election;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rla
