#include "hermvar/covariance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace hermvar {
namespace {

constexpr std::int64_t kSeriesThreshold = 64;

// Generalized binomial coefficient binom(a, m) for real a, via the
// multiplicative recurrence. |binom(a,m)| <= 2/m for a in (0,2), m >= 2.
double real_binom(double a, int m) {
  double b = 1.0;
  for (int i = 1; i <= m; ++i) b *= (a - (i - 1)) / i;
  return b;
}

// rho_H(k) for k >= kSeriesThreshold through the expansion
//   rho_H(k) = k^{2H} * sum_{j>=1} binom(2H, 2j) k^{-2j},
// which avoids the cancellation of the three-term difference form. Terms
// decay at least geometrically with ratio 1/k^2, so a handful suffice for
// relative error below 1e-14.
double rho_series(double a, std::int64_t k) {
  const double u = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  double binom = a * (a - 1.0) / 2.0;  // binom(a, 2)
  double upow = u;
  double sum = 0.0;
  for (int j = 1; j <= 40; ++j) {
    const double term = binom * upow;
    sum += term;
    if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    binom *= (a - 2.0 * j) * (a - 2.0 * j - 1.0) / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
    upow *= u;
  }
  return std::pow(static_cast<double>(k), a) * sum;
}

double factorial(int q) {
  double f = 1.0;
  for (int i = 2; i <= q; ++i) f *= i;
  return f;
}

// Product (s)(s+1)...(s+m-1).
double rising(double s, int m) {
  double p = 1.0;
  for (int i = 0; i < m; ++i) p *= s + i;
  return p;
}

struct ZetaTail {
  double value;  // sum_{k > K} k^{-s}
  double bound;  // rigorous bound on the formula's own truncation error
};

// Hurwitz-style tail sum via Euler-Maclaurin at a0 = K+1. For a0 >= 65 the
// four Bernoulli terms leave a remainder many orders below double precision;
// the remainder bound is the first omitted term (valid because x^{-s} is
// completely monotone).
ZetaTail zeta_tail(double s, std::int64_t K) {
  const double a0 = static_cast<double>(K + 1);
  static constexpr std::array<double, 4> bern = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0,
                                                 -1.0 / 30.0};
  static constexpr std::array<double, 4> fact2j = {2.0, 24.0, 720.0, 40320.0};
  double v = std::pow(a0, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a0, -s);
  for (int j = 1; j <= 4; ++j) {
    v += bern[j - 1] / fact2j[j - 1] * rising(s, 2 * j - 1) * std::pow(a0, -s - 2.0 * j + 1.0);
  }
  const double b10_over_10fact = (5.0 / 66.0) / 3628800.0;
  const double rem = b10_over_10fact * rising(s, 9) * std::pow(a0, -s - 9.0);
  return {v, std::fabs(rem)};
}

struct TailEstimate {
  double value;  // sum_{k > K} rho_H(k)^q
  double bound;  // rigorous bound on |true tail - value|
};

// Closed-form completion of the lag series past K. Writing
//   rho_H(k)^q = k^{q(2H-2)} * h(1/k^2),  h = g^q,
//   g(u) = sum_j binom(2H, 2j+2) u^j,
// the tail becomes sum_m h_m * zeta_tail(2m - q(2H-2)). The certificate
// combines the Euler-Maclaurin remainders with a Cauchy bound
// |h_m| <= (4/3)^q 4^m on the neglected coefficients.
TailEstimate tail_completion(double a, int q, std::int64_t K) {
  constexpr int M = 8;
  const double e = q * (a - 2.0);  // < -1 by the caller's admissibility check

  std::array<double, M> g{};
  for (int j = 0; j < M; ++j) g[j] = real_binom(a, 2 * j + 2);
  std::array<double, M> h = g;
  for (int power = 2; power <= q; ++power) {
    std::array<double, M> next{};
    for (int m = 0; m < M; ++m)
      for (int i = 0; i <= m; ++i) next[m] += h[i] * g[m - i];
    h = next;
  }

  double value = 0.0;
  double bound = 0.0;
  for (int m = 0; m < M; ++m) {
    const ZetaTail z = zeta_tail(2.0 * m - e, K);
    value += h[m] * z.value;
    bound += std::fabs(h[m]) * z.bound;
  }
  const double Kd = static_cast<double>(K);
  const double ratio = 4.0 / (Kd * Kd);
  const double cauchy = std::pow(4.0 / 3.0, q) * std::pow(Kd, 1.0 + e) /
                        (2.0 * M - e - 1.0) * std::pow(ratio, M) / (1.0 - ratio);
  bound += cauchy;
  return {value, bound};
}

}  // namespace

double rho(const HurstParam& H, std::int64_t k) {
  const std::int64_t ak = std::llabs(k);
  if (H.is_brownian()) return ak == 0 ? 1.0 : 0.0;
  if (ak == 0) return 1.0;
  const double a = 2.0 * H.value();
  if (ak >= kSeriesThreshold) return rho_series(a, ak);
  const double kd = static_cast<double>(ak);
  return 0.5 * (std::pow(kd + 1.0, a) + std::pow(kd - 1.0, a) - 2.0 * std::pow(kd, a));
}

double fbm_covariance(const HurstParam& H, double s, double t) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
    throw numeric_range_error("fbm_covariance: time arguments must lie in [0,1]");
  if (H.is_brownian()) return std::min(s, t);
  const double a = 2.0 * H.value();
  return 0.5 * (std::pow(t, a) + std::pow(s, a) - std::pow(std::fabs(t - s), a));
}

double alpha(const HurstParam& H, std::int64_t n, std::int64_t k, double t) {
  KernelQuery{n, k, k, t}.validate();
  const double s1 = static_cast<double>(k) / static_cast<double>(n);
  const double s2 = static_cast<double>(k + 1) / static_cast<double>(n);
  if (H.is_brownian()) return std::max(0.0, std::min(t, s2) - s1);
  const double a = 2.0 * H.value();
  // Split form: the t^{2H} halves of the two covariances cancel exactly.
  return 0.5 * ((std::pow(s2, a) - std::pow(s1, a)) -
                (std::pow(std::fabs(t - s2), a) - std::pow(std::fabs(t - s1), a)));
}

double beta(const HurstParam& H, std::int64_t n, std::int64_t j, std::int64_t k) {
  KernelQuery{n, j, k, 0.0}.validate();
  return std::pow(static_cast<double>(n), -2.0 * H.value()) * rho(H, j - k);
}

double sigma_sq_truncated(const HurstParam& H, int q, std::int64_t K) {
  double sum = 0.0, comp = 0.0;
  auto add = [&](double x) {
    const double t = sum + x;
    comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  add(1.0);  // rho(0)^q
  for (std::int64_t k = 1; k <= K; ++k) add(2.0 * std::pow(rho(H, k), q));
  return factorial(q) * (sum + comp);
}

SigmaSq sigma_sq(const HurstParam& H, int q, double tol) {
  if (q < 2) throw std::invalid_argument("sigma_sq: q must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("sigma_sq: tol must be positive");
  if (H.is_brownian()) return {factorial(q), 0, 0.0};
  const double e = q * (2.0 * H.value() - 2.0);
  if (e >= -1.0)
    throw numeric_range_error("sigma_sq: series diverges, need q(2H-2) < -1 (H < 1 - 1/(2q))");

  const double qfact = factorial(q);
  for (std::int64_t K = kSeriesThreshold;; K *= 4) {
    double sum = 0.0, absSum = 1.0, comp = 0.0;
    auto add = [&](double x) {
      const double t = sum + x;
      comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - t) + x : (x - t) + sum;
      sum = t;
    };
    add(1.0);
    for (std::int64_t k = 1; k <= K; ++k) {
      const double term = 2.0 * std::pow(rho(H, k), q);
      add(term);
      absSum += std::fabs(term);
    }
    const TailEstimate tail = tail_completion(2.0 * H.value(), q, K);
    const double value = qfact * (sum + comp + 2.0 * tail.value);
    const double bound =
        qfact * 2.0 * tail.bound + 1e-13 * qfact * absSum + 8e-16 * std::fabs(value);
    if (bound <= tol) return {value, K, bound};
    if (K > (std::int64_t{1} << 26))
      throw numeric_range_error("sigma_sq: requested tolerance unreachable at " +
                                std::to_string(K) + " lags");
  }
}

}  // namespace hermvar
