#include "rla/election.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rla {

namespace {
const std::string kUndervoteKey = "undervote";
const std::string kOvervoteKey = "overvote";
}  // namespace

const std::string& Selection::table_key() const {
  switch (kind) {
    case Kind::candidate:
      return candidate;
    case Kind::undervote:
      return kUndervoteKey;
    case Kind::overvote:
      return kOvervoteKey;
  }
  throw std::logic_error("Selection: bad kind");
}

const Contest* Election::find_contest(const std::string& contest_id) const {
  for (const Contest& c : contests) {
    if (c.id == contest_id) return &c;
  }
  return nullptr;
}

std::int64_t count_cards_with_contest(const Election& election, const std::string& contest_id) {
  if (!election.cards.has_value()) {
    throw std::runtime_error("count_cards_with_contest: ground truth unavailable in live mode");
  }
  return std::count_if(election.cards->begin(), election.cards->end(),
                       [&](const BallotCard& b) { return b.true_votes.mentions(contest_id); });
}

std::int64_t count_cvrs_with_contest(const Election& election, const std::string& contest_id) {
  if (election.find_contest(contest_id) == nullptr) {
    throw std::invalid_argument("count_cvrs_with_contest: unknown contest '" + contest_id + "'");
  }
  return std::count_if(election.cvrs.begin(), election.cvrs.end(),
                       [&](const Cvr& c) { return c.votes.mentions(contest_id); });
}

std::vector<Finding> validate_election(const Election& election) {
  std::vector<Finding> findings;
  auto add = [&](std::string code, std::string detail) {
    findings.push_back(Finding{std::move(code), std::move(detail)});
  };

  std::set<std::string> contest_ids;
  for (const Contest& contest : election.contests) {
    if (!contest_ids.insert(contest.id).second) {
      add("duplicate_contest_id", contest.id);
    }
    std::set<std::string> cands(contest.candidates.begin(), contest.candidates.end());
    if (cands.size() != contest.candidates.size()) {
      add("duplicate_candidate", contest.id);
    }
    if (contest.candidates.size() < 2) {
      add("too_few_candidates", contest.id);
    }
    for (const std::string& c : contest.candidates) {
      if (c == "undervote" || c == "overvote") {
        add("reserved_candidate_name", contest.id + ": " + c);
      }
    }
    std::set<std::string> winners(contest.reported_winners.begin(),
                                  contest.reported_winners.end());
    if (winners.size() != contest.reported_winners.size()) {
      add("duplicate_reported_winner", contest.id);
    }
    for (const std::string& w : contest.reported_winners) {
      if (cands.count(w) == 0) {
        add("winner_not_a_candidate", contest.id + ": " + w);
      }
    }
    const auto k = static_cast<std::size_t>(std::max(1, contest.social_choice.num_winners));
    switch (contest.social_choice.kind) {
      case SocialChoice::Kind::plurality:
        if (contest.reported_winners.size() != 1) {
          add("winner_count_mismatch", contest.id);
        }
        break;
      case SocialChoice::Kind::multiwinner_plurality:
        if (contest.reported_winners.size() != k) {
          add("winner_count_mismatch", contest.id);
        }
        if (k >= contest.candidates.size()) {
          add("winners_not_fewer_than_candidates", contest.id);
        }
        break;
      case SocialChoice::Kind::supermajority:
        if (contest.reported_winners.size() != 1) {
          add("winner_count_mismatch", contest.id);
        }
        if (!(contest.social_choice.threshold > 0.5 && contest.social_choice.threshold < 1.0)) {
          add("bad_supermajority_threshold", contest.id);
        }
        break;
      case SocialChoice::Kind::external_assertions:
        break;
    }
    if (contest.reported_winners.size() >= contest.candidates.size()) {
      add("winners_not_fewer_than_candidates", contest.id);
    }
    if (contest.card_upper_bound < 0) {
      add("negative_card_upper_bound", contest.id);
    }
    if (!(contest.risk_limit > 0.0 && contest.risk_limit < 1.0)) {
      add("bad_risk_limit", contest.id);
    }
  }

  auto check_votes = [&](const VoteRecord& votes, const std::string& where) {
    for (const auto& [contest_id, sel] : votes.selections) {
      const Contest* contest = election.find_contest(contest_id);
      if (contest == nullptr) {
        add("unknown_contest_reference", where + ": " + contest_id);
        continue;
      }
      if (sel.kind == Selection::Kind::candidate &&
          std::find(contest->candidates.begin(), contest->candidates.end(), sel.candidate) ==
              contest->candidates.end()) {
        add("unknown_candidate_reference", where + ": " + sel.candidate);
      }
    }
  };

  std::map<std::string, int> id_counts;
  for (std::size_t i = 0; i < election.cvrs.size(); ++i) {
    const Cvr& cvr = election.cvrs[i];
    const std::string where = "cvr[" + std::to_string(i) + "]";
    if (cvr.phantom) {
      if (cvr.id.has_value()) {
        add("phantom_with_id", where);
      }
      for (const auto& [cid, sel] : cvr.votes.selections) {
        if (sel.is_valid_vote()) {
          add("phantom_with_valid_vote", where + ": " + cid);
        }
      }
    } else if (cvr.id.has_value()) {
      ++id_counts[*cvr.id];
    } else {
      add("missing_cvr_id", where);
    }
    check_votes(cvr.votes, where);
  }
  for (const auto& [id, n] : id_counts) {
    if (n > 1) {
      add("duplicate_cvr_id", id);
    }
  }

  if (election.cards.has_value()) {
    for (std::size_t i = 0; i < election.cards->size(); ++i) {
      check_votes((*election.cards)[i].true_votes, "card[" + std::to_string(i) + "]");
    }
  }

  std::sort(findings.begin(), findings.end());
  findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
  return findings;
}

}  // namespace rla
