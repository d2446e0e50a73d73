#include "hermvar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

#include "hermvar/rng.hpp"

namespace hermvar {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format_summary(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

// Chooses the sampler for an experiment; the circulant route optionally falls
// back to the dense factorization when an embedding is rejected.
class PathSampler {
 public:
  PathSampler(const HurstParam& H, std::int64_t n, const McOptions& opts) {
    if (opts.method == GeneratorMethod::circulant) {
      try {
        circulant_ = std::make_unique<CirculantSampler>(H, n);
        return;
      } catch (const embedding_spectrum_error&) {
        if (!opts.cholesky_fallback) throw;
      }
    }
    cholesky_ = std::make_unique<CholeskySampler>(H, n);
  }

  FbmPath sample(std::uint64_t seed) const {
    return circulant_ ? circulant_->sample(seed) : cholesky_->sample(seed);
  }

 private:
  std::unique_ptr<CirculantSampler> circulant_;
  std::unique_ptr<CholeskySampler> cholesky_;
};

// Runs body(ctx, r) for r = 0..N-1. Each worker owns a context from make();
// replicate outputs must be written into per-replicate slots so the final
// reduction is independent of the worker count.
template <typename MakeCtx, typename Body>
void for_each_replicate(std::int64_t N, int workers, MakeCtx&& make, Body&& body) {
  workers = std::max(1, workers);
  if (workers == 1) {
    auto ctx = make();
    for (std::int64_t r = 0; r < N; ++r) body(*ctx, r);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        auto ctx = make();
        constexpr std::int64_t chunk = 16;
        for (;;) {
          const std::int64_t lo = next.fetch_add(chunk);
          if (lo >= N) break;
          const std::int64_t hi = std::min(N, lo + chunk);
          for (std::int64_t r = lo; r < hi; ++r) body(*ctx, r);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct MeanSd {
  double mean;
  double sd;
  double std_error;
};

// Deterministic reduction: compensated sums in replicate order.
MeanSd reduce_mean_sd(const std::vector<double>& xs) {
  const double N = static_cast<double>(xs.size());
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  const double mean = (sum + comp) / N;
  double vsum = 0.0, vcomp = 0.0;
  for (double x : xs) {
    const double d = (x - mean) * (x - mean);
    const double t = vsum + d;
    vcomp += (std::fabs(vsum) >= std::fabs(d)) ? (vsum - t) + d : (d - t) + vsum;
    vsum = t;
  }
  const double var = xs.size() > 1 ? (vsum + vcomp) / (N - 1.0) : 0.0;
  const double sd = std::sqrt(std::max(0.0, var));
  return {mean, sd, sd / std::sqrt(N)};
}

void require_dyadic_grid(const std::vector<std::int64_t>& grid, std::int64_t finest) {
  if (grid.size() < 4)
    throw std::invalid_argument("rate experiment: need at least 4 grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::int64_t n = grid[i];
    if (n < 1 || (n & (n - 1)) != 0)
      throw std::invalid_argument("rate experiment: grid entries must be powers of two");
    if (i > 0 && n <= grid[i - 1])
      throw std::invalid_argument("rate experiment: grid must be strictly increasing");
  }
  if (grid.back() != finest)
    throw std::invalid_argument("rate experiment: cfg.n must equal the finest grid entry");
}

ExperimentResult weak_stable_impl(const VariationConfig& cfg, const WeightFunction& f,
                                  const TestFunction& phi, const TestFunction* g,
                                  std::int64_t N, const McOptions& opts) {
  if (!cfg.in_theorem_range())
    throw numeric_range_error("weak distance: (q,H) outside the mixed-Gaussian range");
  if (N < 1) throw std::invalid_argument("weak distance: need N >= 1");
  const int workers = opts.workers > 0 ? opts.workers : default_worker_count();
  const double sigma2 = sigma_sq(cfg.H, cfg.q, opts.sigma_tol).value;

  const auto t0 = Clock::now();
  std::vector<double> diffs(N);
  for_each_replicate(
      N, workers,
      [&] { return std::make_unique<PathSampler>(cfg.H, cfg.n, opts); },
      [&](PathSampler& sampler, std::int64_t r) {
        const FbmPath path = sampler.sample(derive_seed(opts.master_seed, kPathStreamTag, r));
        const double F = weighted_variation(path, f, cfg.q);
        const MixtureScale scale = detail::limit_scale_with_sigma(path, f, sigma2);
        const double limit = mixture_sample(scale, derive_seed(opts.master_seed, kEtaStreamTag, r));
        double d = phi(F) - phi(limit);
        if (g) d *= (*g)(path.values[path.n]);
        diffs[r] = d;
      });
  const MeanSd ms = reduce_mean_sd(diffs);

  ExperimentResult res;
  res.estimate = std::fabs(ms.mean);
  res.std_error = ms.std_error;
  res.replicates = N;
  res.master_seed = opts.master_seed;
  res.wall_seconds = seconds_since(t0);
  res.config_summary = format_summary(
      "%s q=%d H=%.17g n=%lld f=%s phi=%s%s%s N=%lld seed=%llu method=%s",
      g ? "stable" : "weak-distance", cfg.q, cfg.H.value(), static_cast<long long>(cfg.n),
      f.label().c_str(), phi.label.c_str(), g ? " g=" : "", g ? g->label.c_str() : "",
      static_cast<long long>(N), static_cast<unsigned long long>(opts.master_seed),
      method_name(opts.method));
  return res;
}

struct GridAccumulators {
  std::vector<std::vector<double>> per_n;  // [grid index][replicate]
};

RateFit finish_rate_fit(const std::vector<std::int64_t>& grid, const GridAccumulators& acc,
                        bool absolute_mean, double target, std::int64_t N,
                        const McOptions& opts, double wall, std::string summary) {
  RateFit out;
  out.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const MeanSd ms = reduce_mean_sd(acc.per_n[i]);
    const double distance = absolute_mean ? std::fabs(ms.mean) : ms.mean;
    out.points.push_back({grid[i], distance, ms.std_error});
  }
  out.target_exponent = target;
  out.replicates = N;
  out.master_seed = opts.master_seed;
  out.wall_seconds = wall;
  out.config_summary = std::move(summary);
  out.degenerate = std::any_of(out.points.begin(), out.points.end(),
                               [](const RatePoint& p) { return !(p.distance > 0.0); });
  out.noise_limited = std::any_of(out.points.begin(), out.points.end(), [](const RatePoint& p) {
    return p.distance > 0.0 && p.std_error > 0.3 * p.distance;
  });
  if (out.degenerate) {
    out.slope = 0.0;
    out.slope_std_error = 0.0;
    out.intercept = 0.0;
    out.tail_slope = 0.0;
    out.slope_within_target = false;
    return out;
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(out.points.size());
  for (const RatePoint& p : out.points)
    pts.emplace_back(static_cast<double>(p.n), p.distance);
  const ExponentFit fit = fit_exponent(pts);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.tail_slope = fit.tail_slope;
  // Propagate per-point relative noise through the least-squares weights.
  double mx = 0.0;
  std::vector<double> xs(out.points.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = std::log(static_cast<double>(out.points[i].n));
    mx += xs[i];
  }
  mx /= static_cast<double>(xs.size());
  double sxx = 0.0;
  for (double x : xs) sxx += (x - mx) * (x - mx);
  double var_slope = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double w = (xs[i] - mx) / sxx;
    const double rel = out.points[i].std_error / out.points[i].distance;
    var_slope += w * w * rel * rel;
  }
  out.slope_std_error = std::sqrt(var_slope);
  out.slope_within_target = out.slope <= target + 0.2;
  return out;
}

}  // namespace

double phi_exponent(int q, const HurstParam& H) {
  if (q < 2) throw std::invalid_argument("phi_exponent: q must be >= 2");
  const double h = H.value();
  return std::max({-h, h - 1.0, -q * h + 0.5, q * (h - 1.0) + 0.5});
}

double phi_exponent_piecewise(int q, const HurstParam& H) {
  if (q < 2) throw std::invalid_argument("phi_exponent: q must be >= 2");
  const double d = std::fabs(H.value() - 0.5);
  return std::max(d - 0.5, q * d - (q - 1) * 0.5);
}

TestFunction test_cos(double a) {
  return {a == 1.0 ? "cos" : format_summary("cos[a=%g]", a),
          [a](double x) { return std::cos(a * x); }, 64};
}

TestFunction test_sin(double a) {
  return {a == 1.0 ? "sin" : format_summary("sin[a=%g]", a),
          [a](double x) { return std::sin(a * x); }, 64};
}

TestFunction test_logistic() {
  return {"logistic", [](double x) { return 1.0 / (1.0 + std::exp(-x)); }, 64};
}

TestFunction test_erf_step(double a) {
  const double scale = a * std::sqrt(2.0);
  return {a == 1.0 ? "erfstep" : format_summary("erfstep[a=%g]", a),
          [scale](double x) { return 0.5 * (1.0 + std::erf(x / scale)); }, 64};
}

TestFunction test_function_by_label(const std::string& label, double a) {
  if (label == "cos") return test_cos(a);
  if (label == "sin") return test_sin(a);
  if (label == "logistic") return test_logistic();
  if (label == "erfstep") return test_erf_step(a);
  throw config_error("unknown test function '" + label + "'");
}

int default_worker_count() {
  if (const char* env = std::getenv("HERMVAR_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

ExperimentResult estimate_weak_distance(const VariationConfig& cfg, const WeightFunction& f,
                                        const TestFunction& phi, std::int64_t N,
                                        const McOptions& opts) {
  return weak_stable_impl(cfg, f, phi, nullptr, N, opts);
}

ExperimentResult stable_convergence_check(const VariationConfig& cfg, const WeightFunction& f,
                                          const TestFunction& phi, const TestFunction& g,
                                          std::int64_t N, const McOptions& opts) {
  return weak_stable_impl(cfg, f, phi, &g, N, opts);
}

RateFit rate_experiment(const VariationConfig& cfg_finest, const WeightFunction& f,
                        const TestFunction& phi, const std::vector<std::int64_t>& n_grid,
                        std::int64_t N, const McOptions& opts) {
  require_dyadic_grid(n_grid, cfg_finest.n);
  if (!cfg_finest.in_theorem_range())
    throw numeric_range_error("rate experiment: (q,H) outside the mixed-Gaussian range");
  const double target = phi_exponent(cfg_finest.q, cfg_finest.H);
  if (N == 0) {
    const double matched =
        64.0 * std::pow(static_cast<double>(cfg_finest.n), -2.0 * target);
    N = static_cast<std::int64_t>(std::min(1e6, std::max(1e4, matched)));
  }
  if (N < 1) throw std::invalid_argument("rate experiment: need N >= 1");
  const int workers = opts.workers > 0 ? opts.workers : default_worker_count();
  const double sigma2 = sigma_sq(cfg_finest.H, cfg_finest.q, opts.sigma_tol).value;

  const auto t0 = Clock::now();
  GridAccumulators acc;
  acc.per_n.assign(n_grid.size(), std::vector<double>(N));
  for_each_replicate(
      N, workers,
      [&] { return std::make_unique<PathSampler>(cfg_finest.H, cfg_finest.n, opts); },
      [&](PathSampler& sampler, std::int64_t r) {
        const std::uint64_t eta_seed = derive_seed(opts.master_seed, kEtaStreamTag, r);
        const FbmPath fine = sampler.sample(derive_seed(opts.master_seed, kPathStreamTag, r));
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
          const FbmPath coarse = subsample(fine, cfg_finest.n / n_grid[i]);
          const double F = weighted_variation(coarse, f, cfg_finest.q);
          const MixtureScale scale = detail::limit_scale_with_sigma(coarse, f, sigma2);
          acc.per_n[i][r] = phi(F) - phi(mixture_sample(scale, eta_seed));
        }
      });

  std::string summary = format_summary(
      "rate q=%d H=%.17g grid=%lld..%lld f=%s phi=%s N=%lld seed=%llu method=%s",
      cfg_finest.q, cfg_finest.H.value(), static_cast<long long>(n_grid.front()),
      static_cast<long long>(n_grid.back()), f.label().c_str(), phi.label.c_str(),
      static_cast<long long>(N), static_cast<unsigned long long>(opts.master_seed),
      method_name(opts.method));
  return finish_rate_fit(n_grid, acc, /*absolute_mean=*/true, target, N, opts,
                         seconds_since(t0), std::move(summary));
}

RateFit fn_gn_decay(const VariationConfig& cfg_finest, const WeightFunction& f,
                    const std::vector<std::int64_t>& n_grid, std::int64_t N,
                    const McOptions& opts) {
  require_dyadic_grid(n_grid, cfg_finest.n);
  if (N < 1) throw std::invalid_argument("fn_gn_decay: need N >= 1");
  const double target = phi_exponent(cfg_finest.q, cfg_finest.H);
  const int workers = opts.workers > 0 ? opts.workers : default_worker_count();

  std::vector<std::vector<double>> alpha_tables(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i)
    alpha_tables[i] = alpha_diagonal(cfg_finest.H, n_grid[i]);

  const auto t0 = Clock::now();
  GridAccumulators acc;
  acc.per_n.assign(n_grid.size(), std::vector<double>(N));
  for_each_replicate(
      N, workers,
      [&] { return std::make_unique<PathSampler>(cfg_finest.H, cfg_finest.n, opts); },
      [&](PathSampler& sampler, std::int64_t r) {
        const FbmPath fine = sampler.sample(derive_seed(opts.master_seed, kPathStreamTag, r));
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
          const FbmPath coarse = subsample(fine, cfg_finest.n / n_grid[i]);
          double gap = 0.0;
          for (int rr = 1; rr <= cfg_finest.q; ++rr)
            gap += detail::correction_term_with_alpha(coarse, f, cfg_finest.q, rr,
                                                      alpha_tables[i]);
          acc.per_n[i][r] = std::fabs(gap);
        }
      });

  std::string summary = format_summary(
      "fngn q=%d H=%.17g grid=%lld..%lld f=%s N=%lld seed=%llu method=%s", cfg_finest.q,
      cfg_finest.H.value(), static_cast<long long>(n_grid.front()),
      static_cast<long long>(n_grid.back()), f.label().c_str(), static_cast<long long>(N),
      static_cast<unsigned long long>(opts.master_seed), method_name(opts.method));
  return finish_rate_fit(n_grid, acc, /*absolute_mean=*/false, target, N, opts,
                         seconds_since(t0), std::move(summary));
}

ExperimentResult breuer_major_check(int q, const HurstParam& H, std::int64_t n, std::int64_t N,
                                    const McOptions& opts) {
  if (N < 2) throw std::invalid_argument("breuer_major_check: need N >= 2");
  const double limit = sigma_sq(H, q, opts.sigma_tol).value;
  const WeightFunction f = weight_one();
  const int workers = opts.workers > 0 ? opts.workers : default_worker_count();

  const auto t0 = Clock::now();
  std::vector<double> samples(N);
  for_each_replicate(
      N, workers, [&] { return std::make_unique<PathSampler>(H, n, opts); },
      [&](PathSampler& sampler, std::int64_t r) {
        samples[r] = weighted_variation(
            sampler.sample(derive_seed(opts.master_seed, kPathStreamTag, r)), f, q);
      });

  const MeanSd ms = reduce_mean_sd(samples);
  const double var = ms.sd * ms.sd;
  double m4 = 0.0;
  for (double x : samples) {
    const double c = x - ms.mean;
    m4 += c * c * c * c;
  }
  m4 /= static_cast<double>(N);
  const double Nd = static_cast<double>(N);
  const double var_of_var = std::max(0.0, (m4 - (Nd - 3.0) / (Nd - 1.0) * var * var) / Nd);

  // Exact variance at this n for the correction note.
  double finite_n = rho(H, 0);  // 1
  for (std::int64_t h = 1; h < n; ++h)
    finite_n += 2.0 * (1.0 - static_cast<double>(h) / static_cast<double>(n)) *
                std::pow(rho(H, h), q);
  double qfact = 1.0;
  for (int i = 2; i <= q; ++i) qfact *= i;
  finite_n *= qfact;

  ExperimentResult res;
  res.estimate = var;
  res.std_error = std::sqrt(var_of_var);
  res.replicates = N;
  res.master_seed = opts.master_seed;
  res.wall_seconds = seconds_since(t0);
  res.config_summary = format_summary(
      "breuer-major q=%d H=%.17g n=%lld N=%lld seed=%llu method=%s", q, H.value(),
      static_cast<long long>(n), static_cast<long long>(N),
      static_cast<unsigned long long>(opts.master_seed), method_name(opts.method));
  res.note = format_summary("limit variance %.12g, exact n=%lld variance %.12g, bias %.3g",
                            limit, static_cast<long long>(n), finite_n, finite_n - limit);
  return res;
}

}  // namespace hermvar
