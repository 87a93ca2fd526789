#include "rla/retrieval.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rla {

const char* to_string(RetrievalOutcome outcome) {
  switch (outcome) {
    case RetrievalOutcome::card_with_requested_id:
      return "card_with_requested_id";
    case RetrievalOutcome::card_with_other_id:
      return "card_with_other_id";
    case RetrievalOutcome::card_without_id:
      return "card_without_id";
    case RetrievalOutcome::no_card:
      return "no_card";
  }
  return "?";
}

RetrievalOutcome classify_retrieval(const std::string& requested_id, const BallotCard* returned) {
  if (returned == nullptr) return RetrievalOutcome::no_card;
  if (!returned->imprinted_id.has_value()) return RetrievalOutcome::card_without_id;
  if (*returned->imprinted_id == requested_id) return RetrievalOutcome::card_with_requested_id;
  return RetrievalOutcome::card_with_other_id;
}

namespace {

std::vector<std::size_t> cards_with_id(const std::vector<BallotCard>& pile,
                                       const std::string& id) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pile.size(); ++i) {
    if (pile[i].imprinted_id.has_value() && *pile[i].imprinted_id == id) out.push_back(i);
  }
  return out;
}

class HonestRetriever : public Retriever {
 public:
  std::optional<std::size_t> retrieve(const std::string& requested_id,
                                      const std::vector<BallotCard>& pile) override {
    const auto matches = cards_with_id(pile, requested_id);
    if (matches.empty()) return std::nullopt;
    return matches.front();  // with unique imprints this is the one card
  }
};

// The duplicate-id attack: among cards imprinted with the requested id,
// return one whose votes equal the CVR's claim if possible, so the
// comparison looks clean.
class DuplicateExploitRetriever : public Retriever {
 public:
  explicit DuplicateExploitRetriever(std::map<std::string, VoteRecord> claimed_votes)
      : claimed_votes_(std::move(claimed_votes)) {}

  std::optional<std::size_t> retrieve(const std::string& requested_id,
                                      const std::vector<BallotCard>& pile) override {
    const auto matches = cards_with_id(pile, requested_id);
    if (matches.empty()) return std::nullopt;
    auto claim = claimed_votes_.find(requested_id);
    if (claim != claimed_votes_.end()) {
      for (std::size_t idx : matches) {
        if (pile[idx].true_votes == claim->second) return idx;
      }
    }
    return matches.front();
  }

 private:
  std::map<std::string, VoteRecord> claimed_votes_;  // id -> CVR votes
};

class WithholdRetriever : public Retriever {
 public:
  explicit WithholdRetriever(std::optional<std::vector<std::string>> ids) {
    if (ids.has_value()) {
      withheld_.emplace(ids->begin(), ids->end());
    }
  }

  std::optional<std::size_t> retrieve(const std::string& requested_id,
                                      const std::vector<BallotCard>& pile) override {
    if (!withheld_.has_value() || withheld_->count(requested_id) != 0) return std::nullopt;
    const auto matches = cards_with_id(pile, requested_id);
    if (matches.empty()) return std::nullopt;
    return matches.front();
  }

 private:
  std::optional<std::set<std::string>> withheld_;  // nullopt = withhold everything
};

// Always returns a physically existing card imprinted with something other
// than the requested id (cycling through the pile), or nothing if no such
// card exists.
class WrongCardRetriever : public Retriever {
 public:
  std::optional<std::size_t> retrieve(const std::string& requested_id,
                                      const std::vector<BallotCard>& pile) override {
    const std::size_t n = pile.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (cursor_ + k) % n;
      if (pile[idx].imprinted_id.has_value() && *pile[idx].imprinted_id != requested_id) {
        cursor_ = (idx + 1) % n;
        return idx;
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t cursor_ = 0;
};

class BlankCardRetriever : public Retriever {
 public:
  std::optional<std::size_t> retrieve(const std::string&,
                                      const std::vector<BallotCard>& pile) override {
    const std::size_t n = pile.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (cursor_ + k) % n;
      if (!pile[idx].imprinted_id.has_value()) {
        cursor_ = (idx + 1) % n;
        return idx;
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t cursor_ = 0;
};

class ScriptedRetriever : public Retriever {
 public:
  explicit ScriptedRetriever(std::map<std::string, std::optional<std::size_t>> script)
      : script_(std::move(script)) {}

  std::optional<std::size_t> retrieve(const std::string& requested_id,
                                      const std::vector<BallotCard>& pile) override {
    auto it = script_.find(requested_id);
    if (it == script_.end()) return honest_.retrieve(requested_id, pile);
    if (it->second.has_value() && *it->second >= pile.size()) {
      throw std::out_of_range("scripted retriever: card index " +
                              std::to_string(*it->second) + " not in the pile");
    }
    return it->second;
  }

 private:
  std::map<std::string, std::optional<std::size_t>> script_;
  HonestRetriever honest_;
};

}  // namespace

const char* to_string(AdversarySpec::Kind kind) {
  switch (kind) {
    case AdversarySpec::Kind::honest:
      return "honest";
    case AdversarySpec::Kind::duplicate_exploit:
      return "duplicate_exploit";
    case AdversarySpec::Kind::withhold:
      return "withhold";
    case AdversarySpec::Kind::wrong_card:
      return "wrong_card";
    case AdversarySpec::Kind::blank_card:
      return "blank_card";
    case AdversarySpec::Kind::scripted:
      return "scripted";
  }
  return "?";
}

std::unique_ptr<Retriever> make_retriever(const AdversarySpec& spec) {
  switch (spec.kind) {
    case AdversarySpec::Kind::honest:
      return std::make_unique<HonestRetriever>();
    case AdversarySpec::Kind::duplicate_exploit:
      return std::make_unique<DuplicateExploitRetriever>(std::map<std::string, VoteRecord>{});
    case AdversarySpec::Kind::withhold:
      return std::make_unique<WithholdRetriever>(spec.withhold_ids);
    case AdversarySpec::Kind::wrong_card:
      return std::make_unique<WrongCardRetriever>();
    case AdversarySpec::Kind::blank_card:
      return std::make_unique<BlankCardRetriever>();
    case AdversarySpec::Kind::scripted:
      return std::make_unique<ScriptedRetriever>(spec.script);
  }
  throw std::logic_error("make_retriever: bad adversary kind");
}

std::unique_ptr<Retriever> make_retriever(const AdversarySpec& spec,
                                          const std::vector<Cvr>& cvrs) {
  if (spec.kind == AdversarySpec::Kind::duplicate_exploit) {
    std::map<std::string, VoteRecord> claims;
    for (const Cvr& cvr : cvrs) {
      if (!cvr.phantom && cvr.id.has_value()) claims.emplace(*cvr.id, cvr.votes);
    }
    return std::make_unique<DuplicateExploitRetriever>(std::move(claims));
  }
  return make_retriever(spec);
}

bool CanonicalMapping::is_bijection() const {
  std::vector<bool> seen(cvr_to_card.size(), false);
  for (std::size_t idx : cvr_to_card) {
    if (idx >= cvr_to_card.size() || seen[idx]) return false;
    seen[idx] = true;
  }
  return true;
}

CanonicalMapping canonical_pi(const std::vector<Cvr>& cvrs, const std::vector<BallotCard>& cards,
                              const OverstatementAssorter& oa) {
  const std::size_t n = cvrs.size();
  if (cards.size() != n) {
    throw std::invalid_argument("canonical_pi: need equally many CVRs and cards");
  }

  std::map<std::string, std::vector<std::size_t>> by_imprint;
  for (std::size_t b = 0; b < n; ++b) {
    if (cards[b].imprinted_id.has_value()) by_imprint[*cards[b].imprinted_id].push_back(b);
  }

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  CanonicalMapping pi;
  pi.cvr_to_card.assign(n, kUnset);
  std::vector<bool> card_taken(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    if (cvrs[i].phantom || !cvrs[i].id.has_value()) continue;
    auto it = by_imprint.find(*cvrs[i].id);
    if (it == by_imprint.end()) continue;
    std::size_t best = kUnset;
    double best_value = 0.0;
    for (std::size_t b : it->second) {
      if (card_taken[b]) continue;  // only with duplicate CVR ids, which abort upstream
      const double value = oa.value(cvrs[i], cards[b].true_votes);
      if (best == kUnset || value > best_value) {  // ties keep the lowest card index
        best = b;
        best_value = value;
      }
    }
    if (best != kUnset) {
      pi.cvr_to_card[i] = best;
      card_taken[best] = true;
    }
  }

  // Leftover CVRs pair with leftover cards in index order.
  std::vector<std::size_t> free_cards;
  for (std::size_t b = 0; b < n; ++b) {
    if (!card_taken[b]) free_cards.push_back(b);
  }
  std::size_t next_free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pi.cvr_to_card[i] == kUnset) pi.cvr_to_card[i] = free_cards[next_free++];
  }
  return pi;
}

double lower_bound_L(const OverstatementAssorter& oa, const Cvr& cvr, RetrievalOutcome outcome,
                     const VoteRecord* mvr) {
  if (cvr.phantom) {
    return oa.value_from_scores(0.5, 0.0);
  }
  if (outcome == RetrievalOutcome::card_with_requested_id) {
    if (mvr == nullptr) {
      throw std::invalid_argument("lower_bound_L: a card with the requested id was returned "
                                  "but no manual reading was supplied");
    }
    return oa.value(cvr, *mvr);
  }
  return oa.value_from_scores(oa.base().cvr_score(cvr), 0.0);
}

}  // namespace rla
