#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rla/election.hpp"

namespace rla {

// Recipe for a synthetic single-contest election with known ground truth.
//
// Card votes hit true_tallies exactly (remaining cards undervote). CVRs
// are aligned card-by-card, then minimally flipped to hit cvr_tallies
// exactly (when given), then perturbed per cvr_error_rate. Imprinting:
//   unique       honest: card i carries the id of CVR i
//   match_votes  the duplicate-id attack: each card carries the id of some
//                CVR claiming the same votes (ids reused round-robin), so
//                card-first lookups always match; cards with no matching
//                CVR stay blank
//   none         no card carries an id
struct GenSpec {
  std::string contest_id = "contest-1";
  std::vector<std::string> candidates;
  std::int64_t n_cards = 0;
  std::map<std::string, std::int64_t> true_tallies;
  std::optional<std::map<std::string, std::int64_t>> cvr_tallies;
  double cvr_error_rate = 0.0;
  std::optional<std::vector<std::string>> reported_winners;  // default: top-K by CVR tally

  enum class Imprint { unique, match_votes, none };
  Imprint imprinting = Imprint::unique;

  SocialChoice social_choice{};
  double risk_limit = 0.05;

  // Count-mismatch injection: extra duplicate-scan CVRs (fresh ids, copied
  // votes) and CVRs dropped from the list after imprinting.
  std::int64_t extra_cvrs = 0;
  std::int64_t missing_cvrs = 0;
};

const char* to_string(GenSpec::Imprint imprint);

Election generate_election(const GenSpec& spec, const std::string& seed,
                           const std::string& stream_label = "gen");

// 2-candidate tallies for a diluted margin: winner gets round(n(1+m)/2),
// loser the rest.
std::map<std::string, std::int64_t> two_candidate_tallies(std::int64_t n_cards, double margin,
                                                          const std::string& winner,
                                                          const std::string& loser);

}  // namespace rla
