#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rla/assorter.hpp"
#include "rla/election.hpp"

namespace rla {

// What the auditor concludes from comparing the returned card's imprint to
// the requested id. Always computed auditor-side, never trusted from the
// retriever.
enum class RetrievalOutcome {
  card_with_requested_id,
  card_with_other_id,
  card_without_id,
  no_card,
};

const char* to_string(RetrievalOutcome outcome);

RetrievalOutcome classify_retrieval(const std::string& requested_id, const BallotCard* returned);

struct RetrievalResult {
  RetrievalOutcome outcome = RetrievalOutcome::no_card;
  std::optional<std::size_t> card_index;  // index into the physical pile, if any card came back
};

// The untrusted imprint-and-retrieve subsystem. Given a requested id it
// produces the index of some physical card, or nothing. It may decide per
// request, after seeing the request and its own history; it cannot
// fabricate cards that are not in the pile.
class Retriever {
 public:
  virtual ~Retriever() = default;
  virtual std::optional<std::size_t> retrieve(const std::string& requested_id,
                                              const std::vector<BallotCard>& pile) = 0;
};

// Reproducible retriever behaviors for simulations and attack files.
struct AdversarySpec {
  enum class Kind { honest, duplicate_exploit, withhold, wrong_card, blank_card, scripted };

  Kind kind = Kind::honest;
  // withhold: ids to refuse; absent means refuse every request.
  std::optional<std::vector<std::string>> withhold_ids;
  // scripted: requested id -> card index to return (nullopt = return nothing).
  // Requests not in the script are served honestly.
  std::map<std::string, std::optional<std::size_t>> script;
  bool adaptive = false;
};

const char* to_string(AdversarySpec::Kind kind);

std::unique_ptr<Retriever> make_retriever(const AdversarySpec& spec);

// duplicate_exploit picks, among cards imprinted with the requested id,
// one whose votes match the CVR's claim; binding the CVR list here lets it
// do that.
std::unique_ptr<Retriever> make_retriever(const AdversarySpec& spec,
                                           const std::vector<Cvr>& cvrs);

// Adapter for hand-written (possibly adaptive) adversaries in tests: the
// callback sees the request and the full request history.
class CallbackRetriever : public Retriever {
 public:
  using Fn = std::function<std::optional<std::size_t>(
      const std::string& requested_id, const std::vector<std::string>& history,
      const std::vector<BallotCard>& pile)>;

  explicit CallbackRetriever(Fn fn) : fn_(std::move(fn)) {}

  std::optional<std::size_t> retrieve(const std::string& requested_id,
                                      const std::vector<BallotCard>& pile) override {
    auto result = fn_(requested_id, history_, pile);
    history_.push_back(requested_id);
    return result;
  }

 private:
  Fn fn_;
  std::vector<std::string> history_;
};

// Analysis-only bijection from CVR indices to card indices. cvr_to_card[i]
// is the card paired with CVR i.
struct CanonicalMapping {
  std::vector<std::size_t> cvr_to_card;

  bool is_bijection() const;
};

// The canonical pairing for one overstatement assorter: a CVR whose id is
// imprinted on exactly one card pairs with it; with several, it pairs with
// the card maximizing the overstatement value (ties: lowest card index);
// leftover CVRs pair with leftover cards in index order. Requires equally
// many CVRs and cards.
CanonicalMapping canonical_pi(const std::vector<Cvr>& cvrs, const std::vector<BallotCard>& cards,
                              const OverstatementAssorter& oa);

// The computable lower bound L on the canonical-pairing overstatement
// value, built from the CVR and whatever came back:
//   - a card with the requested id: L = B(mvr, cvr), using the human
//     reading of that card;
//   - anything else: L = (1 - A(c)/u) / (2 - v/u), the value with A(b) = 0.
// A phantom CVR uses A(c) = 1/2 and A(b) = 0 regardless of outcome.
// `mvr` is required exactly when outcome == card_with_requested_id on a
// non-phantom CVR.
double lower_bound_L(const OverstatementAssorter& oa, const Cvr& cvr, RetrievalOutcome outcome,
                     const VoteRecord* mvr);

}  // namespace rla
