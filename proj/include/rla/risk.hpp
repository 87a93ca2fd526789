#pragma once

#include <cstdint>
#include <string>

namespace rla {

enum class SamplingScheme { with_replacement, without_replacement };

const char* to_string(SamplingScheme scheme);

// Truncated-shrinkage estimator for the alternative mean:
//   eta_j = min(u - eps, max(mu_j + c / sqrt(d + j), (d*eta0 + S_j) / (d + j)))
// after j draws with running sum S_j.
struct ShrinkTruncParams {
  double eta0 = 0.0;  // prior guess for the population mean
  double d = 100.0;   // prior weight, >= 1
  double c = 0.0;     // exploration scale, > 0
  double eps = 1e-7;  // keeps eta strictly below u
};

// Defaults tuned to a comparison audit with an accurate CVR file: eta0 is
// the zero-overstatement value u/(2u - v), the constant the honest stream
// produces.
ShrinkTruncParams default_estimator(double base_upper_bound, double margin);

// Anytime-valid sequential test of "population mean <= 1/2" for a
// population of N values in [0, u]. Observations multiply a nonnegative
// supermartingale T; the measured risk is the running minimum of 1/T,
// valid at every round by the maximal inequality.
//
// Under without-replacement sampling the null center is updated to
//   mu_j = (N/2 - S_j) / (N - j),
// the mean the remaining values would need for the population total to
// reach N/2. Two boundary states absorb:
//   - the running sum alone exceeds N/2: the null is impossible and the
//     measured risk drops to 0;
//   - mu_j >= u: the null can no longer be falsified from the remaining
//     data and the measured risk is pinned at 1 from then on.
class RiskTest {
 public:
  RiskTest(double u_pop, std::int64_t population_size, SamplingScheme scheme,
           ShrinkTruncParams estimator);

  // Feed the next sampled value, in [0, u_pop]. Out-of-range values throw:
  // they signal a scoring bug and are never clamped.
  void update(double x);

  double measured_risk() const;

  std::int64_t draws() const { return draws_; }
  double running_sum() const { return running_sum_; }
  double u_pop() const { return u_pop_; }
  std::int64_t population_size() const { return population_size_; }
  SamplingScheme scheme() const { return scheme_; }
  const ShrinkTruncParams& estimator() const { return estimator_; }
  bool null_impossible() const { return null_impossible_; }
  bool pinned() const { return pinned_; }
  // log of the running maximum of T (for diagnostics)
  double max_log_t() const { return max_log_t_; }

 private:
  double null_center() const;

  double u_pop_;
  std::int64_t population_size_;
  SamplingScheme scheme_;
  ShrinkTruncParams estimator_;

  double log_t_ = 0.0;
  double max_log_t_ = 0.0;
  double running_sum_ = 0.0;
  std::int64_t draws_ = 0;
  bool null_impossible_ = false;  // sample sum already proves mean > 1/2
  bool pinned_ = false;           // null no longer falsifiable
};

}  // namespace rla
