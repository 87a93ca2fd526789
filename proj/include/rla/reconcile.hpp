#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rla/assorter.hpp"
#include "rla/election.hpp"

namespace rla {

// Outcome of making the CVR count for one contest equal the trusted card
// count.
struct ReconciliationReport {
  enum class Action { none, contest_removed, phantoms_added };

  std::string contest_id;
  std::int64_t n_cards = 0;  // trusted bound N_b
  std::int64_t n_cvrs = 0;   // CVRs mentioning the contest before reconciliation
  Action action = Action::none;
  std::vector<std::string> removed_from_cvr_ids;  // contest_removed
  std::int64_t phantoms_added = 0;
  std::map<std::string, double> post_cvr_means;  // assorter label -> mean
};

struct IdUniqueness {
  bool ok = true;
  std::vector<std::string> duplicates;  // sorted
};

// Pass iff all non-phantom CVR ids are distinct. A failure mandates a full
// hand count: it is the only risk-limiting fallback.
IdUniqueness check_id_uniqueness(const std::vector<Cvr>& cvrs);

// More CVRs mention the contest than cards can: drop the contest from the
// n_cvrs - n_b CVRs latest in lexicographic id order (a dropped CVR scores
// 1/2 for this contest and stays in the list). Throws FullCountSignal if
// any assorter mean falls to <= 1/2 afterwards. Requires n_cvrs > n_b.
ReconciliationReport shrink_cvrs(const Contest& contest, std::vector<Cvr>& cvrs,
                                 std::int64_t n_b, const std::vector<Assorter>& assorters);

// Fewer CVRs mention the contest than cards might: append n_b - n_cvrs
// phantom CVRs (no id, scoring 1/2 for every assorter of the contest).
// Requires n_cvrs < n_b.
ReconciliationReport add_phantoms(const Contest& contest, std::vector<Cvr>& cvrs,
                                  std::int64_t n_b, const std::vector<Assorter>& assorters);

// One assertion to be tested: "the mean of this overstatement assorter
// over the contest's cards exceeds 1/2."
struct Assertion {
  OverstatementAssorter oa;
  std::string contest_id;
  std::string key;  // "<contest>/<label>", unique within a plan
  double risk_limit = 0.05;
  std::int64_t population_size = 0;  // CVRs in scope after reconciliation
};

struct FullCountVerdict {
  std::string reason;
};

// Frozen inputs for the sampling phase: the reconciled election, the
// assertion set with margins, and what reconciliation did.
struct AuditPlan {
  Election election;
  std::vector<Assertion> assertions;
  std::vector<ReconciliationReport> reconciliation;
};

using PreAuditResult = std::variant<AuditPlan, FullCountVerdict>;

using ExternalAssertionMap = std::map<std::string, std::vector<Assorter>>;

// The pre-sampling phase: (a) check all assorter CVR means exceed 1/2,
// (b) check CVR id uniqueness, (c) reconcile per-contest CVR counts to the
// trusted card bounds and refreeze margins. Returns either the frozen plan
// or a full-hand-count verdict with the reason.
PreAuditResult pre_audit_checks(const Election& election,
                                const ExternalAssertionMap* external = nullptr);

}  // namespace rla
