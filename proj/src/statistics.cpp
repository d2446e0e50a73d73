#include "hermvar/statistics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hermvar/hermite.hpp"
#include "hermvar/rng.hpp"

namespace hermvar {
namespace {

constexpr std::int64_t kCompensationThreshold = 4096;

// Fixed ascending-order accumulator; switches to Neumaier compensation for
// long sums so results stay reproducible yet accurate at large n.
class Accumulator {
 public:
  explicit Accumulator(std::int64_t n) : compensated_(n >= kCompensationThreshold) {}
  void add(double x) {
    if (!compensated_) {
      sum_ += x;
      return;
    }
    const double t = sum_ + x;
    comp_ += (std::fabs(sum_) >= std::fabs(x)) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return compensated_ ? sum_ + comp_ : sum_; }

 private:
  bool compensated_;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double int_binom(int n, int r) {
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b *= static_cast<double>(n - r + i) / i;
  return b;
}

void require_variation_args(const FbmPath& path, int q) {
  if (q < 1) throw std::invalid_argument("variation statistic: q must be >= 1");
  if (path.n < 1) throw std::invalid_argument("variation statistic: empty path");
}

}  // namespace

VariationConfig::VariationConfig(int q_, HurstParam H_, std::int64_t n_) : q(q_), H(H_), n(n_) {
  if (q < 1) throw std::invalid_argument("VariationConfig: q must be >= 1");
  if (n < 1) throw std::invalid_argument("VariationConfig: n must be >= 1");
}

bool VariationConfig::in_theorem_range() const {
  const double lo = 1.0 / (2.0 * q);
  const double hi = 1.0 - 1.0 / (2.0 * q);
  return H.value() > lo && H.value() < hi;
}

std::vector<double> alpha_diagonal(const HurstParam& H, std::int64_t n) {
  std::vector<double> diag(n);
  for (std::int64_t k = 0; k < n; ++k)
    diag[k] = alpha(H, n, k, static_cast<double>(k) / static_cast<double>(n));
  return diag;
}

double weighted_variation(const FbmPath& path, const WeightFunction& f, int q) {
  require_variation_args(path, q);
  const std::int64_t n = path.n;
  const double nH = std::pow(static_cast<double>(n), path.H.value());
  Accumulator acc(n);
  for (std::int64_t k = 0; k < n; ++k)
    acc.add(f.eval(0, path.values[k]) * hermite_eval(q, nH * path.deltas[k]));
  return std::pow(static_cast<double>(n), -0.5) * acc.value();
}

double detail::correction_term_with_alpha(const FbmPath& path, const WeightFunction& f, int q,
                                          int r, std::span<const double> alpha_diag) {
  require_variation_args(path, q);
  if (r < 1 || r > q)
    throw std::invalid_argument("correction_term: need 1 <= r <= q, got r=" + std::to_string(r));
  const std::int64_t n = path.n;
  const double nH = std::pow(static_cast<double>(n), path.H.value());
  Accumulator acc(n);
  for (std::int64_t k = 0; k < n; ++k) {
    double apow = 1.0;
    for (int i = 0; i < r; ++i) apow *= alpha_diag[k];
    acc.add(f.eval(r, path.values[k]) * apow * hermite_eval(q - r, nH * path.deltas[k]));
  }
  const double sign = (r % 2 == 1) ? 1.0 : -1.0;
  const double scale = std::pow(static_cast<double>(n), r * path.H.value() - 0.5);
  return sign * int_binom(q, r) * scale * acc.value();
}

double correction_term(const FbmPath& path, const WeightFunction& f, int q, int r) {
  const std::vector<double> diag = alpha_diagonal(path.H, path.n);
  return detail::correction_term_with_alpha(path, f, q, r, diag);
}

std::vector<double> correction_terms(const FbmPath& path, const WeightFunction& f, int q) {
  require_variation_args(path, q);
  const std::vector<double> diag = alpha_diagonal(path.H, path.n);
  std::vector<double> terms(q);
  for (int r = 1; r <= q; ++r)
    terms[r - 1] = detail::correction_term_with_alpha(path, f, q, r, diag);
  return terms;
}

double skorohod_variation(const FbmPath& path, const WeightFunction& f, int q) {
  const double F = weighted_variation(path, f, q);
  const std::vector<double> terms = correction_terms(path, f, q);
  double correction = 0.0;
  for (double t : terms) correction += t;
  return F - correction;
}

MixtureScale detail::limit_scale_with_sigma(const FbmPath& path, const WeightFunction& f,
                                            double sigma_sq_value) {
  const std::int64_t n = path.n;
  Accumulator acc(n);
  for (std::int64_t k = 0; k < n; ++k) {
    const double w = f.eval(0, path.values[k]);
    acc.add(w * w);
  }
  const double riemann = acc.value() / static_cast<double>(n);
  return {std::sqrt(sigma_sq_value * riemann), sigma_sq_value, riemann, path.seed};
}

MixtureScale limit_scale(const FbmPath& path, const WeightFunction& f, int q, double tol) {
  return detail::limit_scale_with_sigma(path, f, sigma_sq(path.H, q, tol).value);
}

double mixture_sample(const MixtureScale& scale, std::uint64_t eta_seed) {
  return scale.S * NormalStream(eta_seed).next_normal();
}

double seminorm(const WeightFunction& f, int N, double p, std::span<const double> t_grid) {
  if (N < 0) throw std::invalid_argument("seminorm: N must be >= 0");
  if (!(p >= 1.0)) throw std::invalid_argument("seminorm: p must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("seminorm: empty t grid");
  for (double t : t_grid)
    if (!(t > 0.0 && t <= 1.0))
      throw numeric_range_error("seminorm: t values must lie in (0,1]");

  static const GaussHermiteRule rule = gauss_hermite_rule(64);
  double total = 0.0;
  for (int i = 0; i <= N; ++i) {
    double worst = 0.0;
    for (double t : t_grid) {
      const double sqrt_t = std::sqrt(t);
      double moment = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double v = f.eval(i, sqrt_t * rule.nodes[j]);
        moment += rule.weights[j] * std::pow(std::fabs(v), p);
      }
      if (!std::isfinite(moment))
        throw growth_violation_error("seminorm: Gaussian moment of derivative order " +
                                     std::to_string(i) + " is not finite at t=" +
                                     std::to_string(t));
      worst = std::max(worst, std::pow(moment, 1.0 / p));
    }
    total += worst;
  }
  return total;
}

double residual_second_moment_exact(const HurstParam& H, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("residual_second_moment_exact: n must be >= 1");
  if (n == 1) return 0.0;
  const double a = 2.0 * H.value();
  std::vector<double> g(n);  // g[k], k = 1..n-1 used
  for (std::int64_t k = 1; k < n; ++k)
    g[k] = std::pow(static_cast<double>(k + 1), a) - std::pow(static_cast<double>(k), a) - 1.0;
  std::vector<double> rho2(n - 1);
  for (std::int64_t h = 0; h < n - 1; ++h) {
    const double r = rho(H, h);
    rho2[h] = r * r;
  }
  double total = 0.0;
  for (std::int64_t h = 0; h < n - 1; ++h) {
    double lag = 0.0;
    for (std::int64_t k = 1; k + h < n; ++k) lag += g[k] * g[k + h];
    total += rho2[h] * (h == 0 ? lag : 2.0 * lag);
  }
  return 4.5 * std::pow(static_cast<double>(n), -a - 1.0) * total;
}

NegativeMomentDiagnostic negative_moment_diagnostic(std::span<const double> scale_samples,
                                                    int q, double alpha) {
  if (scale_samples.empty())
    throw std::invalid_argument("negative_moment_diagnostic: no samples");
  if (q < 2) throw std::invalid_argument("negative_moment_diagnostic: q must be >= 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("negative_moment_diagnostic: alpha > 0");
  const double exponent = (2.0 - 2.0 * q) * alpha;
  double sum = 0.0, largest = 0.0;
  bool degenerate = false;
  for (double s : scale_samples) {
    if (!(s > 0.0)) {
      degenerate = true;
      continue;
    }
    const double term = std::pow(s, exponent);
    sum += term;
    largest = std::max(largest, term);
  }
  const double estimate = sum / static_cast<double>(scale_samples.size());
  const double share = sum > 0.0 ? largest / sum : 1.0;
  return {estimate, share, degenerate || share > 0.1};
}

}  // namespace hermvar
