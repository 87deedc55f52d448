#include "srlb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "srlb/errors.hpp"
#include "srlb/linalg.hpp"

namespace srlb {

namespace {
constexpr double kNormal975 = 1.959963984540054;  // 97.5% standard normal quantile
constexpr int kSeriesTerms = 100;
}  // namespace

EstimateCI make_estimate(double value, double std_error, std::int64_t n) {
  EstimateCI e;
  e.value = value;
  e.std_error = std_error;
  e.ci_low = value - kNormal975 * std_error;
  e.ci_high = value + kNormal975 * std_error;
  e.n = n;
  return e;
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.755) {
    // Jacobi-theta form of the same distribution; the alternating series
    // converges too slowly here.
    const double pi = std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= kSeriesTerms; ++k) {
      const double m = 2.0 * k - 1.0;
      sum += std::exp(-m * m * pi * pi / (8.0 * lambda * lambda));
    }
    const double cdf = std::sqrt(2.0 * pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= kSeriesTerms; ++k) {
    q += sign * 2.0 * std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(q, 0.0, 1.0);
}

TwoSampleResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 30 || ys.size() < 30)
    throw InvalidInputError("ks_two_sample: need at least 30 samples per side");

  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }

  TwoSampleResult r;
  r.statistic = d;
  r.n1 = static_cast<std::int64_t>(a.size());
  r.n2 = static_cast<std::int64_t>(b.size());
  const double n_eff = n1 * n2 / (n1 + n2);
  r.p_value = kolmogorov_q(std::sqrt(n_eff) * d);
  return r;
}

EstimateCI moment_ci(std::span<const double> samples, int k) {
  if (k < 1 || k > 4) throw InvalidInputError("moment_ci: k must be in 1..4");
  if (samples.size() < 30) throw InvalidInputError("moment_ci: need at least 30 samples");
  std::vector<double> powered(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double p = samples[i];
    for (int j = 1; j < k; ++j) p *= samples[i];
    powered[i] = p;
  }
  const double m = pairwise_mean(powered);
  std::vector<double> sq(powered.size());
  for (std::size_t i = 0; i < powered.size(); ++i) {
    const double d = powered[i] - m;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / (static_cast<double>(powered.size()) - 1.0);
  const double se = std::sqrt(var / static_cast<double>(powered.size()));
  return make_estimate(m, se, static_cast<std::int64_t>(samples.size()));
}

}  // namespace srlb
