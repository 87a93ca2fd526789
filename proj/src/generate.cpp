#include "rla/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "rla/prng.hpp"

namespace rla {

const char* to_string(GenSpec::Imprint imprint) {
  switch (imprint) {
    case GenSpec::Imprint::unique:
      return "unique";
    case GenSpec::Imprint::match_votes:
      return "match_votes";
    case GenSpec::Imprint::none:
      return "none";
  }
  return "?";
}

namespace {

std::vector<Selection> selections_from_tallies(const GenSpec& spec,
                                               const std::map<std::string, std::int64_t>& tallies,
                                               const char* what) {
  std::int64_t total = 0;
  for (const auto& [cand, n] : tallies) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": negative tally for " + cand);
    if (std::find(spec.candidates.begin(), spec.candidates.end(), cand) ==
        spec.candidates.end()) {
      throw std::invalid_argument(std::string(what) + ": tally for unknown candidate " + cand);
    }
    total += n;
  }
  if (total > spec.n_cards) {
    throw std::invalid_argument(std::string(what) + ": tallies exceed the number of cards");
  }
  std::vector<Selection> out;
  out.reserve(static_cast<std::size_t>(spec.n_cards));
  for (const std::string& cand : spec.candidates) {  // candidate order, then undervotes
    auto it = tallies.find(cand);
    const std::int64_t n = it == tallies.end() ? 0 : it->second;
    for (std::int64_t k = 0; k < n; ++k) out.push_back(Selection::vote_for(cand));
  }
  while (static_cast<std::int64_t>(out.size()) < spec.n_cards) {
    out.push_back(Selection::undervote());
  }
  return out;
}

void shuffle(std::vector<Selection>& items, HashPrng& prng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(prng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

std::string fresh_nonce(HashPrng& prng, std::set<std::string>& used) {
  for (;;) {
    const std::uint64_t v = prng.next_below(~std::uint64_t{0});
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    std::string id(buf);
    if (used.insert(id).second) return id;
  }
}

}  // namespace

std::map<std::string, std::int64_t> two_candidate_tallies(std::int64_t n_cards, double margin,
                                                          const std::string& winner,
                                                          const std::string& loser) {
  const auto w = static_cast<std::int64_t>(std::llround(static_cast<double>(n_cards) *
                                                        (1.0 + margin) / 2.0));
  if (w < 0 || w > n_cards) {
    throw std::invalid_argument("two_candidate_tallies: margin out of range");
  }
  return {{winner, w}, {loser, n_cards - w}};
}

Election generate_election(const GenSpec& spec, const std::string& seed,
                           const std::string& stream_label) {
  if (spec.candidates.size() < 2) {
    throw std::invalid_argument("generate_election: need at least two candidates");
  }
  if (spec.n_cards < 0) {
    throw std::invalid_argument("generate_election: negative card count");
  }
  if (spec.cvr_error_rate < 0.0 || spec.cvr_error_rate > 1.0) {
    throw std::invalid_argument("generate_election: error rate must lie in [0, 1]");
  }
  if (spec.extra_cvrs < 0 || spec.missing_cvrs < 0 || spec.missing_cvrs > spec.n_cards) {
    throw std::invalid_argument("generate_election: bad extra/missing CVR counts");
  }

  const auto n = static_cast<std::size_t>(spec.n_cards);

  // Ground-truth card votes.
  std::vector<Selection> card_votes = selections_from_tallies(spec, spec.true_tallies, "true_tallies");
  {
    HashPrng prng(seed, stream_label + ":cards");
    shuffle(card_votes, prng);
  }

  // CVR votes: start card-aligned, flip the minimum to hit cvr_tallies.
  std::vector<Selection> cvr_votes = card_votes;
  if (spec.cvr_tallies.has_value()) {
    std::vector<Selection> target = selections_from_tallies(spec, *spec.cvr_tallies, "cvr_tallies");
    std::map<std::string, std::int64_t> quota;
    for (const Selection& s : target) ++quota[s.table_key()];
    std::vector<std::size_t> unmatched;
    for (std::size_t i = 0; i < n; ++i) {
      auto it = quota.find(card_votes[i].table_key());
      if (it != quota.end() && it->second > 0) {
        --it->second;
        cvr_votes[i] = card_votes[i];
      } else {
        unmatched.push_back(i);
      }
    }
    std::size_t cursor = 0;
    for (const Selection& s : target) {  // leftover quota in target order
      auto it = quota.find(s.table_key());
      if (it == quota.end() || it->second == 0) continue;
      --it->second;
      cvr_votes[unmatched.at(cursor++)] = s;
    }
  }
  if (spec.cvr_error_rate > 0.0) {
    HashPrng prng(seed, stream_label + ":errors");
    std::vector<Selection> alternatives;
    for (const std::string& cand : spec.candidates) alternatives.push_back(Selection::vote_for(cand));
    alternatives.push_back(Selection::undervote());
    alternatives.push_back(Selection::overvote());
    for (std::size_t i = 0; i < n; ++i) {
      if (prng.next_unit() >= spec.cvr_error_rate) continue;
      // uniformly random selection different from the current one
      std::vector<Selection> others;
      for (const Selection& alt : alternatives) {
        if (!(alt == cvr_votes[i])) others.push_back(alt);
      }
      cvr_votes[i] = others[static_cast<std::size_t>(prng.next_below(others.size()))];
    }
  }

  // Nonce ids for the CVR list.
  std::set<std::string> used_ids;
  std::vector<std::string> ids;
  {
    HashPrng prng(seed, stream_label + ":ids");
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(fresh_nonce(prng, used_ids));
  }

  Election election;
  election.cvrs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Cvr cvr;
    cvr.id = ids[i];
    cvr.votes.selections.emplace(spec.contest_id, cvr_votes[i]);
    election.cvrs.push_back(std::move(cvr));
  }

  // Physical cards and imprints.
  std::vector<BallotCard> cards;
  cards.reserve(n);
  std::map<std::string, std::vector<std::size_t>> cvrs_by_votes;
  if (spec.imprinting == GenSpec::Imprint::match_votes) {
    for (std::size_t i = 0; i < n; ++i) cvrs_by_votes[cvr_votes[i].table_key()].push_back(i);
  }
  std::map<std::string, std::size_t> round_robin;
  for (std::size_t i = 0; i < n; ++i) {
    BallotCard card;
    card.true_votes.selections.emplace(spec.contest_id, card_votes[i]);
    switch (spec.imprinting) {
      case GenSpec::Imprint::unique:
        card.imprinted_id = ids[i];
        break;
      case GenSpec::Imprint::match_votes: {
        auto it = cvrs_by_votes.find(card_votes[i].table_key());
        if (it != cvrs_by_votes.end() && !it->second.empty()) {
          std::size_t& cursor = round_robin[card_votes[i].table_key()];
          card.imprinted_id = ids[it->second[cursor % it->second.size()]];
          ++cursor;
        }
        break;
      }
      case GenSpec::Imprint::none:
        break;
    }
    cards.push_back(std::move(card));
  }

  // Count-mismatch injection on the CVR list only; imprints stay put.
  if (spec.extra_cvrs > 0) {
    HashPrng prng(seed, stream_label + ":extra-ids");
    for (std::int64_t k = 0; k < spec.extra_cvrs; ++k) {
      Cvr dup = election.cvrs[static_cast<std::size_t>(k) % std::max<std::size_t>(n, 1)];
      dup.id = fresh_nonce(prng, used_ids);
      election.cvrs.push_back(std::move(dup));
    }
  }
  for (std::int64_t k = 0; k < spec.missing_cvrs; ++k) {
    election.cvrs.pop_back();
  }

  // The contest, with reported winners defaulting to the CVR-claimed ones.
  Contest contest;
  contest.id = spec.contest_id;
  contest.social_choice = spec.social_choice;
  contest.candidates = spec.candidates;
  contest.card_upper_bound = spec.n_cards;
  contest.risk_limit = spec.risk_limit;
  if (spec.reported_winners.has_value()) {
    contest.reported_winners = *spec.reported_winners;
  } else {
    std::map<std::string, std::int64_t> tally;
    for (const std::string& cand : spec.candidates) tally[cand] = 0;
    for (const Cvr& cvr : election.cvrs) {
      const Selection* sel = cvr.votes.find(spec.contest_id);
      if (sel != nullptr && sel->is_valid_vote()) ++tally[sel->candidate];
    }
    std::vector<std::pair<std::string, std::int64_t>> ranked(tally.begin(), tally.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    const auto k = static_cast<std::size_t>(std::max(1, spec.social_choice.num_winners));
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
      contest.reported_winners.push_back(ranked[i].first);
    }
  }
  election.contests.push_back(std::move(contest));
  election.cards = std::move(cards);
  return election;
}

}  // namespace rla
