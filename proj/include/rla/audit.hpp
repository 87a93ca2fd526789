#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rla/prng.hpp"
#include "rla/reconcile.hpp"
#include "rla/retrieval.hpp"
#include "rla/risk.hpp"

namespace rla {

struct EstimatorConfig {
  std::optional<double> eta0;  // absent = zero-overstatement value per assertion
  double d = 100.0;
  std::optional<double> c;  // absent = (eta0 - 1/2) / 2
  double eps = 1e-7;
};

ShrinkTruncParams resolve_estimator(const EstimatorConfig& config, double base_upper_bound,
                                    double margin);

struct AuditConfig {
  std::string seed;                   // public, e.g. from dice rolls
  std::string stream_label = "audit";
  SamplingScheme scheme = SamplingScheme::without_replacement;
  std::optional<std::int64_t> max_draws;  // escalation threshold
  EstimatorConfig estimator;
};

// What the audit learns from one retrieval request: the auditor-side
// outcome classification and, when a card with the requested id came back,
// the human reading of its votes.
struct RetrievalObservation {
  RetrievalOutcome outcome = RetrievalOutcome::no_card;
  std::optional<std::size_t> card_index;
  std::optional<VoteRecord> mvr;
};

// Where cards come from during the sampling loop. Simulation binds this to
// the ground-truth pile and a retriever policy; a live audit binds it to a
// human process.
class CardSource {
 public:
  virtual ~CardSource() = default;
  virtual RetrievalObservation fetch(const std::string& requested_id) = 0;
};

class SimulatedCardSource : public CardSource {
 public:
  SimulatedCardSource(const std::vector<BallotCard>& pile, Retriever& retriever)
      : pile_(pile), retriever_(retriever) {}

  RetrievalObservation fetch(const std::string& requested_id) override;

 private:
  const std::vector<BallotCard>& pile_;
  Retriever& retriever_;
};

// Uniform draws of indices in [0, n), seeded and reproducible. Without
// replacement, already-drawn indices are excluded; next() is empty once
// the population is exhausted.
class IndexSampler {
 public:
  IndexSampler(std::size_t n, SamplingScheme scheme, HashPrng prng);

  std::optional<std::size_t> next();
  std::size_t remaining() const;

 private:
  SamplingScheme scheme_;
  HashPrng prng_;
  std::size_t n_;
  std::vector<std::size_t> pool_;  // without replacement only
};

struct AssertionUpdate {
  std::string key;
  double l_value = 0.0;
  double risk = 1.0;
};

struct DrawRecord {
  std::int64_t draw = 0;            // 1-based
  std::optional<std::string> id;    // absent for phantom CVRs
  bool phantom = false;
  bool cached = false;              // served from the retrieval cache
  RetrievalOutcome outcome = RetrievalOutcome::no_card;
  std::vector<AssertionUpdate> updates;
};

enum class Verdict { in_progress, all_confirmed, full_hand_count };

const char* to_string(Verdict verdict);

struct AuditState {
  std::shared_ptr<const AuditPlan> plan;  // immutable; shared across replications
  AuditConfig config;
  std::vector<bool> assertion_confirmed;              // parallel to plan->assertions
  std::map<std::string, bool> contest_confirmed;
  std::vector<double> assertion_risk;                 // current measured risks
  std::vector<DrawRecord> draw_log;
  Verdict verdict = Verdict::in_progress;
  std::string full_count_reason;
  // On termination by exhaustion in simulation mode: the hand-count
  // outcome per contest.
  std::map<std::string, std::vector<std::string>> true_outcome;

  std::int64_t total_draws() const { return static_cast<std::int64_t>(draw_log.size()); }
};

// Drives one audit: seeded CVR-id sampling, cached retrieval, L
// computation, risk updates, and confirmation. Strictly sequential; one
// runner per audit run.
class AuditRunner {
 public:
  AuditRunner(std::shared_ptr<const AuditPlan> plan, AuditConfig config);

  // One draw against the source. Returns false once the audit has
  // terminated (verdict set).
  bool step(CardSource& source);

  // Loops step() to termination and returns the final state.
  AuditState run(CardSource& source);

  const AuditState& state() const { return state_; }
  AuditState take_state() { return std::move(state_); }
  const RiskTest& test(std::size_t assertion_index) const { return tests_.at(assertion_index); }

 private:
  void finish_full_count(std::string reason);

  AuditState state_;
  std::vector<RiskTest> tests_;
  IndexSampler sampler_;
  std::map<std::string, RetrievalObservation> cache_;
  std::int64_t effective_max_draws_;
};

// Convenience for simulations: pre-checks the election, builds the
// simulated source from the ground-truth pile and the retriever, and runs
// to termination. A full-count verdict from the pre-checks comes back as a
// terminal state with no draws.
AuditState run_audit(const Election& election, const AuditConfig& config, Retriever& retriever,
                     const ExternalAssertionMap* external = nullptr);

AuditState run_audit(const AuditPlan& plan, const AuditConfig& config, CardSource& source);

// Hand-count outcome of every contest from the ground-truth cards
// (simulation mode): reported winners by the contest's social-choice
// function. external_assertions contests come back empty (not computable
// from tallies alone).
std::map<std::string, std::vector<std::string>> true_outcome_from_cards(const Election& election);

}  // namespace rla
