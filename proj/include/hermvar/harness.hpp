#ifndef HERMVAR_HARNESS_HPP
#define HERMVAR_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hermvar/bounds.hpp"
#include "hermvar/statistics.hpp"

namespace hermvar {

// Theoretical decay exponent of the weak-convergence rate, as the maximum of
// the four regime exponents {-H, H-1, -qH+1/2, q(H-1)+1/2}. Requires q >= 2.
double phi_exponent(int q, const HurstParam& H);

// The same exponent in its two-branch form
//   (|H-1/2| - 1/2) ∨ (q|H-1/2| - (q-1)/2);
// algebraically identical to phi_exponent and kept as an independent route.
double phi_exponent_piecewise(int q, const HurstParam& H);

// Bounded test functions applied to the statistic in weak-distance estimates.
struct TestFunction {
  std::string label;
  std::function<double(double)> eval;
  int bounded_derivative_order;  // derivatives certified bounded up to here

  double operator()(double x) const { return eval(x); }
};

TestFunction test_cos(double a = 1.0);       // cos(a x)
TestFunction test_sin(double a = 1.0);       // sin(a x)
TestFunction test_logistic();                // 1/(1+e^{-x})
TestFunction test_erf_step(double a = 1.0);  // smoothed step via erf(x / (a sqrt 2))

// Lookup by label ("cos", "sin", "logistic", "erfstep") with scale parameter.
TestFunction test_function_by_label(const std::string& label, double a = 1.0);

// Monte Carlo execution options shared by the experiment drivers.
struct McOptions {
  std::uint64_t master_seed = 1;
  int workers = 0;  // 0 = default_worker_count()
  GeneratorMethod method = GeneratorMethod::circulant;
  bool cholesky_fallback = true;  // fall back when the embedding is rejected
  double sigma_tol = 1e-10;
};

// Worker count from HERMVAR_WORKERS, else the hardware concurrency.
int default_worker_count();

struct ExperimentResult {
  double estimate;
  double std_error;
  std::int64_t replicates;
  std::string config_summary;
  std::uint64_t master_seed;
  double wall_seconds;
  std::string note;
};

// |E phi(F_n) - E phi(S eta)| by common random numbers: each replicate reuses
// one path for both the statistic and its limiting scale, with eta drawn from
// the disjoint eta seed domain. cfg must lie in the theorem range.
ExperimentResult estimate_weak_distance(const VariationConfig& cfg, const WeightFunction& f,
                                        const TestFunction& phi, std::int64_t N,
                                        const McOptions& opts);

// Same estimate against E[phi(.) g(B_1)] for a bounded g; g = const collapses
// to estimate_weak_distance exactly.
ExperimentResult stable_convergence_check(const VariationConfig& cfg, const WeightFunction& f,
                                          const TestFunction& phi, const TestFunction& g,
                                          std::int64_t N, const McOptions& opts);

struct RatePoint {
  std::int64_t n;
  double distance;
  double std_error;
};

struct RateFit {
  std::vector<RatePoint> points;
  double target_exponent;     // phi(H)
  double slope;               // least-squares slope of log distance vs log n
  double slope_std_error;     // propagated from the per-point noise
  double intercept;
  double tail_slope;          // two-point slope through the largest n pair
  bool slope_within_target;   // slope <= target + 0.2
  bool noise_limited;         // some point has std_error > 30% of its distance
  bool degenerate;            // all distances vanished; no fit performed
  std::int64_t replicates;
  std::uint64_t master_seed;
  double wall_seconds;
  std::string config_summary;
};

// Weak-distance decay over a dyadic n grid (>= 4 powers of two, increasing).
// Replicates share one fine path across the whole grid by subsampling, so the
// per-n estimates are positively coupled and the fitted slope is stable.
// N = 0 selects the noise-matched default max(10^4, 64 n_max^{-2 phi}) capped
// at 10^6.
RateFit rate_experiment(const VariationConfig& cfg_finest, const WeightFunction& f,
                        const TestFunction& phi, const std::vector<std::int64_t>& n_grid,
                        std::int64_t N, const McOptions& opts);

// Decay of E|F_n - G_n| over a dyadic n grid, same coupling scheme. The
// statistic is the exact correction sum, so this isolates the Skorohod gap.
RateFit fn_gn_decay(const VariationConfig& cfg_finest, const WeightFunction& f,
                    const std::vector<std::int64_t>& n_grid, std::int64_t N,
                    const McOptions& opts);

// Sample variance of the unweighted statistic (f = 1) against the limiting
// variance sigma_sq(H, q); the note records the exact finite-n variance
// q! sum_{|h|<n} (1-|h|/n) rho^q(h) for reference.
ExperimentResult breuer_major_check(int q, const HurstParam& H, std::int64_t n, std::int64_t N,
                                    const McOptions& opts);

}  // namespace hermvar

#endif
