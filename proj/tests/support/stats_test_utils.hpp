#ifndef HERMVAR_TESTS_SUPPORT_STATS_TEST_UTILS_HPP
#define HERMVAR_TESTS_SUPPORT_STATS_TEST_UTILS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

// Statistical helpers for test assertions. The KS p-values use the asymptotic
// Kolmogorov distribution with Stephens' finite-sample correction, which is
// accurate to ~1e-3 for n >= 100 — far finer than the test thresholds here.
namespace test_util {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

inline double kolmogorov_tail(double lambda) {
  if (lambda < 0.05) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

template <typename Cdf>
double ks_pvalue(std::vector<double> xs, Cdf&& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, F - static_cast<double>(i) / n, (static_cast<double>(i) + 1.0) / n - F});
  }
  const double root = std::sqrt(n);
  return kolmogorov_tail((root + 0.12 + 0.11 / root) * d);
}

inline double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
}

struct MomentSummary {
  double mean;
  double sd;
  double std_error;
};

inline MomentSummary summarize(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
  const double sd = std::sqrt(var);
  return {mean, sd, sd / std::sqrt(n)};
}

// Standard error of a sample variance via the fourth central moment.
inline double variance_std_error(const std::vector<double>& xs) {
  const MomentSummary ms = summarize(xs);
  const double n = static_cast<double>(xs.size());
  double m4 = 0.0;
  for (double x : xs) {
    const double c = x - ms.mean;
    m4 += c * c * c * c;
  }
  m4 /= n;
  const double v = ms.sd * ms.sd;
  return std::sqrt(std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * v * v) / n));
}

}  // namespace test_util

#endif
