#ifndef HERMVAR_COVARIANCE_HPP
#define HERMVAR_COVARIANCE_HPP

#include <cstdint>

#include "hermvar/errors.hpp"

namespace hermvar {

// Hurst parameter restricted to the open interval (0,1).
class HurstParam {
 public:
  explicit HurstParam(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0))
      throw numeric_range_error("Hurst parameter must lie in (0,1)");
  }
  double value() const { return value_; }
  // The H = 1/2 case degenerates to Brownian motion and several kernels
  // collapse to exact closed forms; callers branch on this.
  bool is_brownian() const { return value_ == 0.5; }

 private:
  double value_;
};

// Validated index bundle for grid-kernel queries.
struct KernelQuery {
  std::int64_t n;  // grid size, >= 1
  std::int64_t j;  // increment index in [0, n)
  std::int64_t k;  // increment index in [0, n)
  double t;        // time in [0, 1]

  void validate() const {
    if (n < 1) throw numeric_range_error("KernelQuery: n must be >= 1");
    if (j < 0 || j >= n || k < 0 || k >= n)
      throw numeric_range_error("KernelQuery: increment index outside [0, n)");
    if (!(t >= 0.0 && t <= 1.0)) throw numeric_range_error("KernelQuery: t outside [0, 1]");
  }
};

// Autocovariance of the unit-grid increment sequence at lag k:
//   rho_H(k) = ((|k+1|^{2H} + |k-1|^{2H}) - 2|k|^{2H}) / 2.
// Even in k, equals 1 at k = 0, and vanishes for |k| >= 1 when H = 1/2.
// For |k| >= 64 the difference form cancels catastrophically, so the value is
// produced by a binomial series in 1/k^2 with relative error below 1e-14.
double rho(const HurstParam& H, std::int64_t k);

// Covariance of the motion itself: (t^{2H} + s^{2H} - |t-s|^{2H}) / 2,
// defined for s, t in [0,1].
double fbm_covariance(const HurstParam& H, double s, double t);

// Inner product between the k-th grid increment window and [0, t]:
//   alpha(H,n,k,t) = fbm_covariance(H,(k+1)/n,t) - fbm_covariance(H,k/n,t),
// evaluated in the cancellation-free split form. At H = 1/2 this is exactly
// the overlap length |[k/n,(k+1)/n] ∩ [0,t]|.
double alpha(const HurstParam& H, std::int64_t n, std::int64_t k, double t);

// Covariance of two grid increments: beta(H,n,j,k) = n^{-2H} rho_H(j-k).
double beta(const HurstParam& H, std::int64_t n, std::int64_t j, std::int64_t k);

struct SigmaSq {
  double value;              // q! * sum over all integer lags of rho_H(k)^q
  std::int64_t truncation_K; // largest lag summed explicitly
  double tail_bound;         // certified bound on the total truncation error
};

// Limiting variance q! * sum_{k in Z} rho_H(k)^q. Requires q >= 2 and
// q(2H-2) < -1 (otherwise the series diverges and numeric_range_error is
// thrown). The explicit sum over |k| <= K is completed with a certified
// closed-form tail so the result is within tail_bound <= tol of the limit.
SigmaSq sigma_sq(const HurstParam& H, int q, double tol);

// Plain truncated sum q! * sum_{|k| <= K} rho_H(k)^q without the tail
// completion; exposed for convergence diagnostics and tests.
double sigma_sq_truncated(const HurstParam& H, int q, std::int64_t K);

}  // namespace hermvar

#endif
