#include "rla/reconcile.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rla {

namespace {

std::map<std::string, double> in_scope_means(const std::string& contest_id,
                                             const std::vector<Cvr>& cvrs,
                                             const std::vector<Assorter>& assorters) {
  std::map<std::string, double> means;
  std::int64_t n = 0;
  for (const Cvr& cvr : cvrs) {
    if (cvr.votes.mentions(contest_id)) ++n;
  }
  for (const Assorter& a : assorters) {
    double sum = 0.0;
    for (const Cvr& cvr : cvrs) {
      if (!cvr.votes.mentions(contest_id)) continue;
      sum += a.cvr_score(cvr);
    }
    means[a.label()] = n == 0 ? 0.0 : sum / static_cast<double>(n);
  }
  return means;
}

}  // namespace

IdUniqueness check_id_uniqueness(const std::vector<Cvr>& cvrs) {
  std::map<std::string, int> counts;
  for (const Cvr& cvr : cvrs) {
    if (!cvr.phantom && cvr.id.has_value()) ++counts[*cvr.id];
  }
  IdUniqueness result;
  for (const auto& [id, n] : counts) {
    if (n > 1) result.duplicates.push_back(id);
  }
  result.ok = result.duplicates.empty();
  return result;
}

ReconciliationReport shrink_cvrs(const Contest& contest, std::vector<Cvr>& cvrs,
                                 std::int64_t n_b, const std::vector<Assorter>& assorters) {
  std::vector<std::size_t> in_scope;
  for (std::size_t i = 0; i < cvrs.size(); ++i) {
    if (cvrs[i].votes.mentions(contest.id)) in_scope.push_back(i);
  }
  const auto n_c = static_cast<std::int64_t>(in_scope.size());
  if (n_c <= n_b) {
    throw std::invalid_argument("shrink_cvrs: requires more CVRs than cards (N_c > N_b)");
  }

  // Deterministic choice: drop from the CVRs latest in lexicographic id
  // order. Any choice preserves correctness.
  std::stable_sort(in_scope.begin(), in_scope.end(), [&](std::size_t a, std::size_t b) {
    return cvrs[a].id.value_or("") < cvrs[b].id.value_or("");
  });

  ReconciliationReport report;
  report.contest_id = contest.id;
  report.n_cards = n_b;
  report.n_cvrs = n_c;
  report.action = ReconciliationReport::Action::contest_removed;
  for (std::int64_t k = 0; k < n_c - n_b; ++k) {
    const std::size_t idx = in_scope[in_scope.size() - 1 - static_cast<std::size_t>(k)];
    report.removed_from_cvr_ids.push_back(cvrs[idx].id.value_or(""));
    cvrs[idx].votes.selections.erase(contest.id);
  }
  std::sort(report.removed_from_cvr_ids.begin(), report.removed_from_cvr_ids.end());

  report.post_cvr_means = in_scope_means(contest.id, cvrs, assorters);
  for (const auto& [label, mean] : report.post_cvr_means) {
    if (mean <= 0.5 + kMeanTolerance) {
      throw FullCountSignal("contest '" + contest.id + "': assorter '" + label +
                            "' has CVR mean <= 1/2 after count reconciliation");
    }
  }
  return report;
}

ReconciliationReport add_phantoms(const Contest& contest, std::vector<Cvr>& cvrs,
                                  std::int64_t n_b, const std::vector<Assorter>& assorters) {
  std::int64_t n_c = 0;
  for (const Cvr& cvr : cvrs) {
    if (cvr.votes.mentions(contest.id)) ++n_c;
  }
  if (n_c >= n_b) {
    throw std::invalid_argument("add_phantoms: requires fewer CVRs than cards (N_c < N_b)");
  }

  ReconciliationReport report;
  report.contest_id = contest.id;
  report.n_cards = n_b;
  report.n_cvrs = n_c;
  report.action = ReconciliationReport::Action::phantoms_added;
  report.phantoms_added = n_b - n_c;
  for (std::int64_t k = 0; k < report.phantoms_added; ++k) {
    Cvr phantom;
    phantom.phantom = true;
    phantom.votes.selections.emplace(contest.id, Selection::undervote());
    cvrs.push_back(std::move(phantom));
  }

  report.post_cvr_means = in_scope_means(contest.id, cvrs, assorters);
  return report;
}

PreAuditResult pre_audit_checks(const Election& election, const ExternalAssertionMap* external) {
  const std::vector<Finding> findings = validate_election(election);
  if (!findings.empty()) {
    std::string reason = "election fails validation:";
    for (const Finding& f : findings) reason += " [" + f.code + ": " + f.detail + "]";
    throw std::invalid_argument(reason);
  }

  auto external_for = [&](const std::string& contest_id) -> const std::vector<Assorter>* {
    if (external == nullptr) return nullptr;
    auto it = external->find(contest_id);
    return it == external->end() ? nullptr : &it->second;
  };

  Election reconciled = election;

  // (a) all assorter means over the reported CVRs must exceed 1/2
  for (const Contest& contest : reconciled.contests) {
    for (const Assorter& a : contest_assorters(contest, external_for(contest.id))) {
      double v;
      try {
        v = assorter_margin(a, reconciled.cvrs);
      } catch (const std::invalid_argument&) {
        return FullCountVerdict{"contest '" + contest.id + "': no CVR mentions the contest"};
      }
      if (v <= 2.0 * kMeanTolerance) {
        return FullCountVerdict{"contest '" + contest.id +
                                "': reported winners did not win according to the CVRs " +
                                "(assorter '" + a.label() + "')"};
      }
    }
  }

  // (b) non-phantom CVR ids must be unique
  const IdUniqueness uniq = check_id_uniqueness(reconciled.cvrs);
  if (!uniq.ok) {
    std::string reason = "duplicate CVR ids:";
    for (const std::string& id : uniq.duplicates) reason += " " + id;
    return FullCountVerdict{reason};
  }

  // (c) per-contest count reconciliation against the trusted bounds
  std::vector<ReconciliationReport> reports;
  for (const Contest& contest : reconciled.contests) {
    const std::vector<Assorter> assorters =
        contest_assorters(contest, external_for(contest.id));
    std::int64_t n_c = 0;
    for (const Cvr& cvr : reconciled.cvrs) {
      if (cvr.votes.mentions(contest.id)) ++n_c;
    }
    ReconciliationReport report;
    try {
      if (n_c > contest.card_upper_bound) {
        report = shrink_cvrs(contest, reconciled.cvrs, contest.card_upper_bound, assorters);
      } else if (n_c < contest.card_upper_bound) {
        report = add_phantoms(contest, reconciled.cvrs, contest.card_upper_bound, assorters);
      } else {
        report.contest_id = contest.id;
        report.n_cards = contest.card_upper_bound;
        report.n_cvrs = n_c;
        report.action = ReconciliationReport::Action::none;
        for (const Assorter& a : assorters) {
          report.post_cvr_means[a.label()] = (assorter_margin(a, reconciled.cvrs) + 1.0) / 2.0;
        }
      }
    } catch (const FullCountSignal& signal) {
      return FullCountVerdict{signal.what()};
    }
    reports.push_back(std::move(report));
  }

  // Freeze the assertion set with post-reconciliation margins.
  AuditPlan plan;
  plan.reconciliation = std::move(reports);
  for (const Contest& contest : reconciled.contests) {
    std::vector<OverstatementAssorter> oas;
    try {
      oas = assertion_set(contest, reconciled.cvrs, external_for(contest.id));
    } catch (const FullCountSignal& signal) {
      return FullCountVerdict{signal.what()};
    }
    std::int64_t population = 0;
    for (const Cvr& cvr : reconciled.cvrs) {
      if (cvr.votes.mentions(contest.id)) ++population;
    }
    for (OverstatementAssorter& oa : oas) {
      Assertion assertion{std::move(oa), contest.id, "", contest.risk_limit, population};
      assertion.key = contest.id + "/" + assertion.oa.base().label();
      plan.assertions.push_back(std::move(assertion));
    }
  }
  plan.election = std::move(reconciled);
  return plan;
}

}  // namespace rla
