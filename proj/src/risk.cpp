#include "rla/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rla {

const char* to_string(SamplingScheme scheme) {
  return scheme == SamplingScheme::with_replacement ? "with_replacement"
                                                    : "without_replacement";
}

ShrinkTruncParams default_estimator(double base_upper_bound, double margin) {
  ShrinkTruncParams p;
  p.eta0 = base_upper_bound / (2.0 * base_upper_bound - margin);
  p.d = 100.0;
  p.c = (p.eta0 - 0.5) / 2.0;
  p.eps = 1e-7;
  return p;
}

RiskTest::RiskTest(double u_pop, std::int64_t population_size, SamplingScheme scheme,
                   ShrinkTruncParams estimator)
    : u_pop_(u_pop),
      population_size_(population_size),
      scheme_(scheme),
      estimator_(estimator) {
  if (!(u_pop_ > 0.5)) {
    throw std::invalid_argument(
        "RiskTest: assertion untestable (population upper bound <= 1/2)");
  }
  if (population_size_ < 1) {
    throw std::invalid_argument("RiskTest: population size must be >= 1");
  }
  if (!(estimator_.d >= 1.0) || !(estimator_.c > 0.0) || !(estimator_.eps > 0.0)) {
    throw std::invalid_argument("RiskTest: bad estimator parameters");
  }
}

double RiskTest::null_center() const {
  if (scheme_ == SamplingScheme::with_replacement) return 0.5;
  const auto n = static_cast<double>(population_size_);
  const auto j = static_cast<double>(draws_);
  return (n * 0.5 - running_sum_) / (n - j);
}

void RiskTest::update(double x) {
  if (null_impossible_ || pinned_) return;  // absorbing states
  if (!(x >= 0.0) || x > u_pop_) {
    throw std::domain_error("RiskTest::update: observation outside [0, u]");
  }
  if (scheme_ == SamplingScheme::without_replacement && draws_ >= population_size_) {
    throw std::logic_error("RiskTest::update: population exhausted");
  }

  // Accumulated rounding in running_sum_ must not flip the boundary
  // comparisons for a population whose mean is exactly 1/2.
  const double sum_slack = static_cast<double>(population_size_) * 1e-12;
  const double mu = null_center();
  const double mu_slack =
      sum_slack / static_cast<double>(population_size_ - std::min(draws_, population_size_ - 1));
  const auto j = static_cast<double>(draws_);

  if (mu < -mu_slack) {
    null_impossible_ = true;
  } else if (mu >= u_pop_) {
    pinned_ = true;
  } else if (mu <= mu_slack) {
    // Under the null every remaining value is 0; a positive draw refutes it.
    if (x > u_pop_ * 1e-12) null_impossible_ = true;
  } else {
    const double eta =
        std::min(u_pop_ - estimator_.eps,
                 std::max(mu + estimator_.c / std::sqrt(estimator_.d + j),
                          (estimator_.d * estimator_.eta0 + running_sum_) / (estimator_.d + j)));
    const double m =
        (x / mu) * (eta - mu) / (u_pop_ - mu) + (u_pop_ - eta) / (u_pop_ - mu);
    log_t_ += std::log(m);
    max_log_t_ = std::max(max_log_t_, log_t_);
  }

  running_sum_ += x;
  ++draws_;

  // With the whole population bounded below by 0, a sample sum above N/2
  // already proves the population mean exceeds 1/2.
  if (scheme_ == SamplingScheme::without_replacement &&
      running_sum_ > static_cast<double>(population_size_) * 0.5 + sum_slack) {
    null_impossible_ = true;
  }
}

double RiskTest::measured_risk() const {
  if (null_impossible_) return 0.0;
  if (pinned_) return 1.0;
  return std::min(1.0, std::exp(-max_log_t_));
}

}  // namespace rla
