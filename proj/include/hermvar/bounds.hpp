#ifndef HERMVAR_BOUNDS_HPP
#define HERMVAR_BOUNDS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hermvar/covariance.hpp"

namespace hermvar {

struct AlphaBounds {
  double max_abs;      // max over k and the t grid of |alpha(H,n,k,t)|
  double max_abs_sum;  // max over the t grid of sum_k |alpha(H,n,k,t)|
};

// Scans |alpha| over all windows k and a uniform t grid (endpoints included).
// The pointwise bound n^{-(2H ∧ 1)} and the uniform-in-t boundedness of the
// absolute sums are the two scaling facts these numbers certify.
AlphaBounds alpha_bounds(const HurstParam& H, std::int64_t n, int t_grid_size);

// sum_j |beta(H,n,j,i)|^a, directly in O(n). Scales like n^{(1-2a) ∨ (-2aH)}.
double beta_power_sum(const HurstParam& H, std::int64_t n, double a, std::int64_t i);

// sum_{j,k} |beta(H,n,j,k)|^a via the lag decomposition
//   n^{-2aH} * sum_{|h|<n} (n-|h|) |rho_H(h)|^a,
// which is O(n). Scales like n^{(2-2a) ∨ (1-2aH)}.
double beta_power_double_sum(const HurstParam& H, std::int64_t n, double a);

// sum_{j,j'} |beta_{j,l}|^a |beta_{j',l}|^a |beta_{j,j'}|^b in O(n^2) from
// cached lag tables. Scales like n^{(-2H(2a+b)) ∨ (2-2(2a+b))}.
double triple_beta_sum(const HurstParam& H, std::int64_t n, double a, double b, std::int64_t l);

// Predicted decay exponents of the three sums above.
double beta_power_sum_exponent(const HurstParam& H, double a);
double beta_power_double_sum_exponent(const HurstParam& H, double a);
double triple_beta_sum_exponent(const HurstParam& H, double a, double b);

struct ExponentFit {
  std::vector<std::pair<double, double>> points;  // (n, value) as fitted
  double slope;
  double intercept;
  double max_residual;  // max |log v - (intercept + slope log n)|
  double tail_slope;    // two-point slope through the last pair of points
};

// Least-squares line through (log n, log value). Requires >= 3 points with
// strictly increasing n and strictly positive values.
ExponentFit fit_exponent(std::span<const std::pair<double, double>> points);

}  // namespace hermvar

#endif
