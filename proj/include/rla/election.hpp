#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rla {

// How one contest was marked on one card or interpreted in one CVR.
struct Selection {
  enum class Kind { candidate, undervote, overvote };

  Kind kind = Kind::undervote;
  std::string candidate;  // set iff kind == candidate

  static Selection vote_for(std::string candidate_id) {
    return Selection{Kind::candidate, std::move(candidate_id)};
  }
  static Selection undervote() { return Selection{Kind::undervote, {}}; }
  static Selection overvote() { return Selection{Kind::overvote, {}}; }

  bool is_valid_vote() const { return kind == Kind::candidate; }

  // Key used in score tables and file formats: the candidate id, or the
  // literal strings "undervote" / "overvote".
  const std::string& table_key() const;

  friend bool operator==(const Selection&, const Selection&) = default;
};

// Per-contest selections of one ballot card or CVR. A record "mentions" a
// contest iff it has an entry for it, whatever the selection state.
struct VoteRecord {
  std::map<std::string, Selection> selections;  // contest id -> selection

  bool mentions(const std::string& contest_id) const {
    return selections.count(contest_id) != 0;
  }
  const Selection* find(const std::string& contest_id) const {
    auto it = selections.find(contest_id);
    return it == selections.end() ? nullptr : &it->second;
  }

  friend bool operator==(const VoteRecord&, const VoteRecord&) = default;
};

struct SocialChoice {
  enum class Kind { plurality, multiwinner_plurality, supermajority, external_assertions };

  Kind kind = Kind::plurality;
  int num_winners = 1;      // K; only > 1 for multiwinner_plurality
  double threshold = 0.0;   // f in (1/2, 1); supermajority only

  friend bool operator==(const SocialChoice&, const SocialChoice&) = default;
};

struct Contest {
  std::string id;
  SocialChoice social_choice;
  std::vector<std::string> candidates;        // C >= 2
  std::vector<std::string> reported_winners;  // size K, subset of candidates
  std::int64_t card_upper_bound = 0;          // trusted bound on cards containing the contest
  double risk_limit = 0.05;

  friend bool operator==(const Contest&, const Contest&) = default;
};

struct Cvr {
  std::optional<std::string> id;  // absent for phantoms
  VoteRecord votes;
  bool phantom = false;

  friend bool operator==(const Cvr&, const Cvr&) = default;
};

struct BallotCard {
  std::optional<std::string> imprinted_id;  // may be absent or duplicate another card's
  VoteRecord true_votes;                    // visible only when the card is retrieved and read

  friend bool operator==(const BallotCard&, const BallotCard&) = default;
};

// cards carries the ground truth and is present only in simulation mode;
// a live audit delegates retrieval to an external provider.
struct Election {
  std::vector<Contest> contests;
  std::vector<Cvr> cvrs;
  std::optional<std::vector<BallotCard>> cards;

  bool simulation_mode() const { return cards.has_value(); }
  const Contest* find_contest(const std::string& contest_id) const;

  friend bool operator==(const Election&, const Election&) = default;
};

struct Finding {
  std::string code;
  std::string detail;

  friend bool operator==(const Finding&, const Finding&) = default;
  friend auto operator<=>(const Finding&, const Finding&) = default;
};

// Number of physical cards whose true votes mention the contest.
// Requires ground truth; throws in live mode.
std::int64_t count_cards_with_contest(const Election& election, const std::string& contest_id);

// Number of CVRs (phantoms included) whose votes mention the contest.
// Throws on an unknown contest id.
std::int64_t count_cvrs_with_contest(const Election& election, const std::string& contest_id);

// Structural checks: duplicate non-phantom CVR ids, dangling candidate
// references, winner-set sizes, parameter ranges, phantom shape. Returns a
// sorted list of findings; empty means valid. Never throws.
std::vector<Finding> validate_election(const Election& election);

}  // namespace rla
