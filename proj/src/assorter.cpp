#include "rla/assorter.hpp"

#include <algorithm>

namespace rla {

Assorter::Assorter(std::string contest_id, std::string label, double upper_bound,
                   std::map<std::string, double> selection_scores, double default_score)
    : contest_id_(std::move(contest_id)),
      label_(std::move(label)),
      upper_bound_(upper_bound),
      scores_(std::move(selection_scores)),
      default_score_(default_score) {
  if (!(upper_bound_ > 0.0)) {
    throw std::invalid_argument("Assorter: upper bound must be positive");
  }
  auto in_range = [&](double v) { return v >= 0.0 && v <= upper_bound_; };
  if (!in_range(default_score_)) {
    throw std::invalid_argument("Assorter '" + label_ + "': default score out of [0, u]");
  }
  for (const auto& [key, v] : scores_) {
    if (!in_range(v)) {
      throw std::invalid_argument("Assorter '" + label_ + "': score for '" + key +
                                  "' out of [0, u]");
    }
  }
}

double Assorter::score(const VoteRecord& votes) const {
  const Selection* sel = votes.find(contest_id_);
  if (sel == nullptr) return 0.5;  // contest not on this record
  auto it = scores_.find(sel->table_key());
  return it == scores_.end() ? default_score_ : it->second;
}

double Assorter::cvr_score(const Cvr& cvr) const {
  if (cvr.phantom) return 0.5;
  return score(cvr.votes);
}

OverstatementAssorter::OverstatementAssorter(Assorter base, double margin)
    : base_(std::move(base)), margin_(margin), denom_(2.0 - margin / base_.upper_bound()) {
  if (!(margin_ > 0.0)) {
    throw std::invalid_argument("OverstatementAssorter: margin must be positive");
  }
  if (margin_ > 2.0 * base_.upper_bound() - 1.0 + kMeanTolerance) {
    throw std::invalid_argument("OverstatementAssorter: margin exceeds 2u - 1");
  }
}

std::vector<Assorter> plurality_assorters(const Contest& contest) {
  if (contest.social_choice.kind != SocialChoice::Kind::plurality &&
      contest.social_choice.kind != SocialChoice::Kind::multiwinner_plurality) {
    throw std::invalid_argument("plurality_assorters: contest '" + contest.id +
                                "' is not a plurality-family contest");
  }
  std::vector<Assorter> out;
  for (const std::string& winner : contest.reported_winners) {
    for (const std::string& cand : contest.candidates) {
      if (std::find(contest.reported_winners.begin(), contest.reported_winners.end(), cand) !=
          contest.reported_winners.end()) {
        continue;  // reported winners are not losers
      }
      out.emplace_back(contest.id, winner + " beats " + cand, 1.0,
                       std::map<std::string, double>{{winner, 1.0}, {cand, 0.0}}, 0.5);
    }
  }
  return out;
}

Assorter supermajority_assorter(const Contest& contest) {
  if (contest.social_choice.kind != SocialChoice::Kind::supermajority) {
    throw std::invalid_argument("supermajority_assorter: contest '" + contest.id +
                                "' is not a supermajority contest");
  }
  const double f = contest.social_choice.threshold;
  if (!(f > 0.5 && f < 1.0)) {
    throw std::invalid_argument("supermajority_assorter: threshold must lie in (1/2, 1)");
  }
  if (contest.reported_winners.size() != 1) {
    throw std::invalid_argument("supermajority_assorter: exactly one reported winner required");
  }
  const std::string& winner = contest.reported_winners.front();
  const double share = 1.0 / (2.0 * f);
  std::map<std::string, double> scores{{winner, share}};
  for (const std::string& cand : contest.candidates) {
    if (cand != winner) scores.emplace(cand, 0.0);
  }
  // undervote/overvote fall through to the default 1/2
  return Assorter(contest.id, winner + " wins supermajority", share, std::move(scores), 0.5);
}

std::vector<Assorter> contest_assorters(const Contest& contest,
                                        const std::vector<Assorter>* external) {
  switch (contest.social_choice.kind) {
    case SocialChoice::Kind::plurality:
    case SocialChoice::Kind::multiwinner_plurality:
      return plurality_assorters(contest);
    case SocialChoice::Kind::supermajority:
      return {supermajority_assorter(contest)};
    case SocialChoice::Kind::external_assertions:
      if (external == nullptr || external->empty()) {
        throw std::invalid_argument("contest '" + contest.id +
                                    "' uses external assertions but none were supplied");
      }
      for (const Assorter& a : *external) {
        if (a.contest_id() != contest.id) {
          throw std::invalid_argument("external assorter '" + a.label() +
                                      "' is for a different contest");
        }
      }
      return *external;
  }
  throw std::logic_error("contest_assorters: bad social choice kind");
}

double assorter_margin(const Assorter& assorter, const std::vector<Cvr>& cvrs) {
  if (cvrs.empty()) {
    throw std::invalid_argument("assorter_margin: empty CVR list");
  }
  double sum = 0.0;
  std::int64_t n = 0;
  for (const Cvr& cvr : cvrs) {
    if (!cvr.votes.mentions(assorter.contest_id())) continue;
    sum += assorter.cvr_score(cvr);
    ++n;
  }
  if (n == 0) {
    throw std::invalid_argument("assorter_margin: no CVR mentions contest '" +
                                assorter.contest_id() + "'");
  }
  return 2.0 * (sum / static_cast<double>(n)) - 1.0;
}

std::vector<OverstatementAssorter> assertion_set(const Contest& contest,
                                                 const std::vector<Cvr>& cvrs,
                                                 const std::vector<Assorter>* external) {
  std::vector<OverstatementAssorter> out;
  for (Assorter& a : contest_assorters(contest, external)) {
    const double v = assorter_margin(a, cvrs);
    if (v <= 2.0 * kMeanTolerance) {
      throw FullCountSignal("contest '" + contest.id + "': reported winners did not win " +
                            "according to the CVRs (assorter '" + a.label() +
                            "' has CVR mean <= 1/2)");
    }
    out.emplace_back(std::move(a), v);
  }
  return out;
}

}  // namespace rla
