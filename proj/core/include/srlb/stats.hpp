#pragma once

#include <cstdint>
#include <span>

namespace srlb {

/// Point estimate with CLT standard error and 95% normal confidence interval.
struct EstimateCI {
  double value = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::int64_t n = 0;
};

EstimateCI make_estimate(double value, double std_error, std::int64_t n);

struct TwoSampleResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic (Smirnov series)
/// p-value. Requires at least 30 samples on each side.
TwoSampleResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// Complement of the Kolmogorov distribution at lambda >= 0.
double kolmogorov_q(double lambda);

/// k-th raw moment (k in 1..4) with CLT standard error.
EstimateCI moment_ci(std::span<const double> samples, int k);

}  // namespace srlb
