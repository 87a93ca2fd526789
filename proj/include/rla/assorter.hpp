#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rla/election.hpp"

namespace rla {

// Comparisons of assorter means against 1/2 treat values within this
// tolerance as equal to 1/2.
inline constexpr double kMeanTolerance = 1e-12;

// Raised when an audit cannot proceed statistically and the only
// risk-limiting fallback is a full hand count.
struct FullCountSignal : std::runtime_error {
  explicit FullCountSignal(const std::string& reason) : std::runtime_error(reason) {}
};

// A bounded nonnegative scoring function over the selections of one contest.
// The reported outcome claim is "mean score over the cards > 1/2".
//
// Scores are table-driven: selection key -> value, with a default for keys
// not listed. A record that does not mention the contest scores 1/2
// (audits here do not use card-style information), and a phantom CVR
// scores 1/2 regardless of its table value.
class Assorter {
 public:
  Assorter(std::string contest_id, std::string label, double upper_bound,
           std::map<std::string, double> selection_scores, double default_score = 0.5);

  const std::string& contest_id() const { return contest_id_; }
  const std::string& label() const { return label_; }
  double upper_bound() const { return upper_bound_; }

  double score(const VoteRecord& votes) const;
  double cvr_score(const Cvr& cvr) const;

  const std::map<std::string, double>& selection_scores() const { return scores_; }
  double default_score() const { return default_score_; }

 private:
  std::string contest_id_;
  std::string label_;
  double upper_bound_;
  std::map<std::string, double> scores_;
  double default_score_;
};

// B(b, c) = (1 - (A(c) - A(b))/u) / (2 - v/u), the comparison-audit
// overstatement assorter. Values lie in [0, 2/(2 - v/u)]; the upper bound
// equals 2u/(2u - v). Well-defined only for margin v > 0.
class OverstatementAssorter {
 public:
  OverstatementAssorter(Assorter base, double margin);

  const Assorter& base() const { return base_; }
  double margin() const { return margin_; }

  double upper_bound() const { return 2.0 / denom_; }
  // Value when the CVR and the card agree: u/(2u - v), always > 1/2.
  double zero_overstatement_value() const { return 1.0 / denom_; }

  double value_from_scores(double cvr_score, double card_score) const {
    return (1.0 - (cvr_score - card_score) / base_.upper_bound()) / denom_;
  }
  double value(const Cvr& cvr, const VoteRecord& card_votes) const {
    return value_from_scores(base_.cvr_score(cvr), base_.score(card_votes));
  }

 private:
  Assorter base_;
  double margin_;
  double denom_;  // 2 - v/u
};

// One "winner w beats loser l" assorter per (reported winner, reported
// loser) pair: K(C-K) in total. Scores: 1 for w, 0 for l, 1/2 otherwise;
// u = 1.
std::vector<Assorter> plurality_assorters(const Contest& contest);

// Supermajority with threshold f: 1/(2f) for the winner, 0 for a valid
// vote for anyone else, 1/2 for no valid vote; u = 1/(2f). The mean
// exceeds 1/2 iff the winner's share of valid votes exceeds f.
Assorter supermajority_assorter(const Contest& contest);

// Base assorters for a contest under its social-choice function. For
// external_assertions the caller supplies them.
std::vector<Assorter> contest_assorters(const Contest& contest,
                                        const std::vector<Assorter>* external = nullptr);

// v := 2 * mean - 1 over the CVRs in scope for the assorter's contest
// (those mentioning it; phantoms score 1/2). Throws if none are in scope.
double assorter_margin(const Assorter& assorter, const std::vector<Cvr>& cvrs);

// One overstatement assorter per base assorter, each with its margin
// computed from `cvrs`. Throws FullCountSignal if any base mean is <= 1/2:
// the reported winners did not win according to the CVRs.
std::vector<OverstatementAssorter> assertion_set(const Contest& contest,
                                                 const std::vector<Cvr>& cvrs,
                                                 const std::vector<Assorter>* external = nullptr);

}  // namespace rla
