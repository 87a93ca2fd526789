#include "rla/audit.hpp"

#include <algorithm>
#include <stdexcept>

namespace rla {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::in_progress:
      return "in_progress";
    case Verdict::all_confirmed:
      return "all_confirmed";
    case Verdict::full_hand_count:
      return "full_hand_count";
  }
  return "?";
}

ShrinkTruncParams resolve_estimator(const EstimatorConfig& config, double base_upper_bound,
                                    double margin) {
  ShrinkTruncParams p = default_estimator(base_upper_bound, margin);
  p.d = config.d;
  p.eps = config.eps;
  if (config.eta0.has_value()) {
    if (!(*config.eta0 > 0.5)) {
      throw std::invalid_argument("estimator: eta0 must exceed 1/2");
    }
    p.eta0 = *config.eta0;
    p.c = (p.eta0 - 0.5) / 2.0;
  }
  if (config.c.has_value()) p.c = *config.c;
  return p;
}

RetrievalObservation SimulatedCardSource::fetch(const std::string& requested_id) {
  RetrievalObservation obs;
  const std::optional<std::size_t> idx = retriever_.retrieve(requested_id, pile_);
  if (idx.has_value() && *idx >= pile_.size()) {
    throw std::out_of_range("retriever returned a card index outside the pile");
  }
  const BallotCard* card = idx.has_value() ? &pile_[*idx] : nullptr;
  obs.outcome = classify_retrieval(requested_id, card);
  obs.card_index = idx;
  if (obs.outcome == RetrievalOutcome::card_with_requested_id) {
    obs.mvr = card->true_votes;  // trusted manual reading of the returned card
  }
  return obs;
}

IndexSampler::IndexSampler(std::size_t n, SamplingScheme scheme, HashPrng prng)
    : scheme_(scheme), prng_(std::move(prng)), n_(n) {
  if (scheme_ == SamplingScheme::without_replacement) {
    pool_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) pool_[i] = i;
  }
}

std::optional<std::size_t> IndexSampler::next() {
  if (scheme_ == SamplingScheme::with_replacement) {
    if (n_ == 0) return std::nullopt;
    return prng_.next_below(n_);
  }
  if (pool_.empty()) return std::nullopt;
  const auto pos = static_cast<std::size_t>(prng_.next_below(pool_.size()));
  const std::size_t idx = pool_[pos];
  pool_[pos] = pool_.back();
  pool_.pop_back();
  return idx;
}

std::size_t IndexSampler::remaining() const {
  return scheme_ == SamplingScheme::with_replacement ? n_ : pool_.size();
}

namespace {

std::vector<RiskTest> build_tests(const AuditPlan& plan, const AuditConfig& config) {
  std::vector<RiskTest> tests;
  tests.reserve(plan.assertions.size());
  for (const Assertion& a : plan.assertions) {
    const ShrinkTruncParams params =
        resolve_estimator(config.estimator, a.oa.base().upper_bound(), a.oa.margin());
    tests.emplace_back(a.oa.upper_bound(), a.population_size, config.scheme, params);
  }
  return tests;
}

}  // namespace

AuditRunner::AuditRunner(std::shared_ptr<const AuditPlan> plan, AuditConfig config)
    : state_(),
      tests_(build_tests(*plan, config)),
      sampler_(plan->election.cvrs.size(), config.scheme,
               HashPrng(config.seed, config.stream_label)),
      effective_max_draws_(-1) {
  state_.plan = std::move(plan);
  state_.config = std::move(config);
  state_.assertion_confirmed.assign(state_.plan->assertions.size(), false);
  state_.assertion_risk.assign(state_.plan->assertions.size(), 1.0);
  for (const Contest& contest : state_.plan->election.contests) {
    state_.contest_confirmed[contest.id] = false;
  }

  const auto n = static_cast<std::int64_t>(state_.plan->election.cvrs.size());
  effective_max_draws_ = state_.config.max_draws.value_or(-1);
  if (state_.config.scheme == SamplingScheme::without_replacement) {
    effective_max_draws_ = effective_max_draws_ < 0 ? n : std::min(effective_max_draws_, n);
  } else if (effective_max_draws_ < 0) {
    throw std::invalid_argument(
        "AuditConfig: with-replacement sampling requires max_draws to guarantee termination");
  }
  if (state_.plan->assertions.empty()) {
    throw std::invalid_argument("AuditRunner: plan has no assertions");
  }
}

void AuditRunner::finish_full_count(std::string reason) {
  state_.verdict = Verdict::full_hand_count;
  state_.full_count_reason = std::move(reason);
  if (state_.plan->election.simulation_mode()) {
    state_.true_outcome = true_outcome_from_cards(state_.plan->election);
  }
}

bool AuditRunner::step(CardSource& source) {
  if (state_.verdict != Verdict::in_progress) return false;

  const bool all_confirmed = std::all_of(state_.assertion_confirmed.begin(),
                                         state_.assertion_confirmed.end(),
                                         [](bool b) { return b; });
  if (all_confirmed) {
    state_.verdict = Verdict::all_confirmed;
    return false;
  }
  if (effective_max_draws_ >= 0 && state_.total_draws() >= effective_max_draws_) {
    if (state_.config.scheme == SamplingScheme::without_replacement &&
        sampler_.remaining() == 0) {
      finish_full_count("sample exhausted: every CVR id was drawn without confirming all assertions");
    } else {
      finish_full_count("maximum draws reached without confirming all assertions");
    }
    return false;
  }
  const std::optional<std::size_t> drawn = sampler_.next();
  if (!drawn.has_value()) {
    finish_full_count("sample exhausted: every CVR id was drawn without confirming all assertions");
    return false;
  }

  const Cvr& cvr = state_.plan->election.cvrs[*drawn];
  DrawRecord record;
  record.draw = state_.total_draws() + 1;
  record.phantom = cvr.phantom;

  RetrievalObservation obs;  // phantoms skip retrieval; L uses A(c)=1/2, A(b)=0
  if (!cvr.phantom) {
    record.id = cvr.id;
    auto it = cache_.find(*cvr.id);
    if (it != cache_.end()) {
      obs = it->second;
      record.cached = true;
    } else {
      obs = source.fetch(*cvr.id);
      cache_.emplace(*cvr.id, obs);
    }
    record.outcome = obs.outcome;
  }

  for (std::size_t k = 0; k < state_.plan->assertions.size(); ++k) {
    if (state_.assertion_confirmed[k]) continue;
    const Assertion& assertion = state_.plan->assertions[k];
    if (!cvr.votes.mentions(assertion.contest_id)) continue;
    const VoteRecord* mvr = obs.mvr.has_value() ? &*obs.mvr : nullptr;
    const double l_value = lower_bound_L(assertion.oa, cvr, obs.outcome, mvr);
    tests_[k].update(l_value);
    const double risk = tests_[k].measured_risk();
    state_.assertion_risk[k] = risk;
    if (risk <= assertion.risk_limit) {
      state_.assertion_confirmed[k] = true;
    }
    record.updates.push_back(AssertionUpdate{assertion.key, l_value, risk});
  }

  for (auto& [contest_id, confirmed] : state_.contest_confirmed) {
    if (confirmed) continue;
    bool all = true;
    for (std::size_t k = 0; k < state_.plan->assertions.size(); ++k) {
      if (state_.plan->assertions[k].contest_id == contest_id &&
          !state_.assertion_confirmed[k]) {
        all = false;
        break;
      }
    }
    confirmed = all;
  }

  state_.draw_log.push_back(std::move(record));

  if (std::all_of(state_.assertion_confirmed.begin(), state_.assertion_confirmed.end(),
                  [](bool b) { return b; })) {
    state_.verdict = Verdict::all_confirmed;
    return false;
  }
  return true;
}

AuditState AuditRunner::run(CardSource& source) {
  while (step(source)) {
  }
  return state_;
}

AuditState run_audit(const AuditPlan& plan, const AuditConfig& config, CardSource& source) {
  AuditRunner runner(std::make_shared<const AuditPlan>(plan), config);
  runner.run(source);
  return runner.take_state();
}

AuditState run_audit(const Election& election, const AuditConfig& config, Retriever& retriever,
                     const ExternalAssertionMap* external) {
  PreAuditResult pre = pre_audit_checks(election, external);
  if (std::holds_alternative<FullCountVerdict>(pre)) {
    AuditState state;
    state.config = config;
    state.verdict = Verdict::full_hand_count;
    state.full_count_reason = std::get<FullCountVerdict>(pre).reason;
    if (election.simulation_mode()) {
      state.true_outcome = true_outcome_from_cards(election);
    }
    return state;
  }
  auto plan = std::make_shared<const AuditPlan>(std::move(std::get<AuditPlan>(pre)));
  if (!plan->election.simulation_mode()) {
    throw std::invalid_argument("run_audit with a retriever requires ground-truth cards");
  }
  AuditRunner runner(plan, config);
  SimulatedCardSource source(plan->election.cards.value(), retriever);
  runner.run(source);
  return runner.take_state();
}

std::map<std::string, std::vector<std::string>> true_outcome_from_cards(const Election& election) {
  std::map<std::string, std::vector<std::string>> out;
  if (!election.cards.has_value()) return out;
  for (const Contest& contest : election.contests) {
    std::map<std::string, std::int64_t> tally;
    for (const std::string& cand : contest.candidates) tally[cand] = 0;
    std::int64_t valid = 0;
    for (const BallotCard& card : *election.cards) {
      const Selection* sel = card.true_votes.find(contest.id);
      if (sel != nullptr && sel->is_valid_vote() && tally.count(sel->candidate) != 0) {
        ++tally[sel->candidate];
        ++valid;
      }
    }
    std::vector<std::pair<std::string, std::int64_t>> ranked(tally.begin(), tally.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    std::vector<std::string> winners;
    switch (contest.social_choice.kind) {
      case SocialChoice::Kind::plurality:
      case SocialChoice::Kind::multiwinner_plurality: {
        const auto k = static_cast<std::size_t>(std::max(1, contest.social_choice.num_winners));
        for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
          winners.push_back(ranked[i].first);
        }
        break;
      }
      case SocialChoice::Kind::supermajority: {
        if (!ranked.empty() && valid > 0 &&
            static_cast<double>(ranked.front().second) >
                contest.social_choice.threshold * static_cast<double>(valid)) {
          winners.push_back(ranked.front().first);
        }
        break;
      }
      case SocialChoice::Kind::external_assertions:
        break;  // not computable from tallies alone
    }
    out[contest.id] = std::move(winners);
  }
  return out;
}

}  // namespace rla
