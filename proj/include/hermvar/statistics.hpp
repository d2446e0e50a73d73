#ifndef HERMVAR_STATISTICS_HPP
#define HERMVAR_STATISTICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hermvar/covariance.hpp"
#include "hermvar/fbm.hpp"
#include "hermvar/weight.hpp"

namespace hermvar {

// Parameter bundle for a variation experiment. Construction validates q and n;
// H values outside the open interval (1/(2q), 1-1/(2q)) are legal but flagged,
// since the mixed-Gaussian limit only covers that range.
struct VariationConfig {
  int q;
  HurstParam H;
  std::int64_t n;

  VariationConfig(int q_, HurstParam H_, std::int64_t n_);
  bool in_theorem_range() const;
};

// alpha(H, n, k, k/n) for k = 0..n-1: the inner products between each
// increment window and the running time horizon, reused by every correction.
std::vector<double> alpha_diagonal(const HurstParam& H, std::int64_t n);

// F_n = n^{-1/2} sum_k f(B_{k/n}) H_q(n^H (B_{(k+1)/n} - B_{k/n})).
// Summation is in ascending k, compensated for n >= 4096.
double weighted_variation(const FbmPath& path, const WeightFunction& f, int q);

// r-th correction K_{n,r} separating F_n from its Skorohod form:
//   K_{n,r} = (-1)^{r+1} C(q,r) n^{rH-1/2}
//             sum_k f^{(r)}(B_{k/n}) alpha_k^r H_{q-r}(n^H dB_k),
// for 1 <= r <= q. Requires f to provide derivatives up to order r.
double correction_term(const FbmPath& path, const WeightFunction& f, int q, int r);

// All corrections r = 1..q in one pass over the shared alpha table.
std::vector<double> correction_terms(const FbmPath& path, const WeightFunction& f, int q);

// Skorohod-integral form G_n of the same statistic, evaluated as
// F_n - sum_r K_{n,r} so the decomposition identity holds bit-for-bit.
double skorohod_variation(const FbmPath& path, const WeightFunction& f, int q);

// Scale of the mixed-Gaussian limit: S^2 = sigma_sq(H,q) * (1/n) sum_k f(B_{k/n})^2
// with the left-endpoint Riemann sum over the sampled path.
struct MixtureScale {
  double S;
  double sigma_sq;
  double riemann;  // (1/n) sum_k f(B_{k/n})^2
  std::uint64_t path_seed;
};

MixtureScale limit_scale(const FbmPath& path, const WeightFunction& f, int q, double tol);

// S * eta with eta standard normal drawn from the dedicated eta seed domain.
double mixture_sample(const MixtureScale& scale, std::uint64_t eta_seed);

// Gaussian-weighted Sobolev-style seminorm
//   sum_{i<=N} max_{t in t_grid} (E|f^{(i)}(sqrt(t) Z)|^p)^{1/p},
// a grid-max lower approximation of the supremum over t in (0,1]. Non-finite
// quadrature values raise growth_violation_error; t values must lie in (0,1]
// (the t = 0 marginal is a point mass and is excluded by contract).
double seminorm(const WeightFunction& f, int N, double p, std::span<const double> t_grid);

// Exact second moment of the q = 3, f(x) = x residual (the r = 1 correction):
//   E[K_{n,1}^2] = (9/2) n^{-2H-1} sum_{j,k=1}^{n-1} g_j g_k rho_H(j-k)^2,
//   g_k = (k+1)^{2H} - k^{2H} - 1,
// evaluated lag-by-lag in O(n^2) with no sampling. Decays like n^{2H-2} for
// H < 3/4 and n^{6H-5} above.
double residual_second_moment_exact(const HurstParam& H, std::int64_t n);

// MC diagnostic for the negative moment E[S^{(2-2q) alpha}] that the limit
// theory needs finite. Flags a heavy tail when one sample carries more than
// 10% of the sum or a zero scale is present.
struct NegativeMomentDiagnostic {
  double estimate;
  double max_share;
  bool heavy_tail_warning;
};
NegativeMomentDiagnostic negative_moment_diagnostic(std::span<const double> scale_samples,
                                                    int q, double alpha);

namespace detail {
// Hot-loop variants with precomputed sigma^2 / alpha tables.
MixtureScale limit_scale_with_sigma(const FbmPath& path, const WeightFunction& f,
                                    double sigma_sq_value);
double correction_term_with_alpha(const FbmPath& path, const WeightFunction& f, int q, int r,
                                  std::span<const double> alpha_diag);
}  // namespace detail

}  // namespace hermvar

#endif
