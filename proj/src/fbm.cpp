#include "hermvar/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>

#include "hermvar/errors.hpp"
#include "hermvar/rng.hpp"

namespace hermvar {
namespace {

// FFTW plan creation/destruction is not thread safe; execution of a plan on
// its own buffers is confined to the owning sampler.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> cumulative_path(const std::vector<double>& deltas) {
  std::vector<double> values(deltas.size() + 1);
  values[0] = 0.0;
  for (std::size_t k = 0; k < deltas.size(); ++k) values[k + 1] = values[k] + deltas[k];
  return values;
}

}  // namespace

const char* method_name(GeneratorMethod m) {
  return m == GeneratorMethod::cholesky ? "cholesky" : "circulant";
}

IncrementVector increments(const FbmPath& path) {
  return {path.H, path.n, path.deltas};
}

FbmPath subsample(const FbmPath& path, std::int64_t stride) {
  if (stride < 1 || path.n % stride != 0)
    throw std::invalid_argument("subsample: stride must divide n");
  const std::int64_t m = path.n / stride;
  FbmPath coarse{path.H, m, {}, {}, path.seed, path.method};
  coarse.values.resize(m + 1);
  coarse.deltas.resize(m);
  for (std::int64_t k = 0; k <= m; ++k) coarse.values[k] = path.values[k * stride];
  for (std::int64_t k = 0; k < m; ++k)
    coarse.deltas[k] = coarse.values[k + 1] - coarse.values[k];
  return coarse;
}

struct CholeskySampler::Impl {
  HurstParam H;
  std::int64_t n;
  double scale;  // n^{-H}
  Eigen::MatrixXd L;
};

CholeskySampler::CholeskySampler(const HurstParam& H, std::int64_t n, std::int64_t cap)
    : impl_(new Impl{H, n, 0.0, {}}) {
  if (n < 1) throw config_error("CholeskySampler: n must be >= 1");
  if (n > cap)
    throw config_error("CholeskySampler: n exceeds the O(n^3) factorization cap of " +
                       std::to_string(cap));
  impl_->scale = std::pow(static_cast<double>(n), -H.value());
  // Factor the unit-lag correlation matrix; the n^{-H} grid scale is applied
  // to the samples instead, which keeps the factorization well conditioned.
  Eigen::MatrixXd R(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t k = 0; k <= j; ++k) {
      const double r = rho(H, j - k);
      R(j, k) = r;
      R(k, j) = r;
    }
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success)
    throw numeric_range_error("CholeskySampler: increment covariance failed to factor (n=" +
                              std::to_string(n) + ", H=" + std::to_string(H.value()) + ")");
  impl_->L = llt.matrixL();
}

CholeskySampler::~CholeskySampler() = default;

std::int64_t CholeskySampler::n() const { return impl_->n; }

FbmPath CholeskySampler::sample(std::uint64_t seed) const {
  const std::int64_t n = impl_->n;
  NormalStream stream(seed);
  Eigen::VectorXd z(n);
  for (std::int64_t k = 0; k < n; ++k) z(k) = stream.next_normal();
  Eigen::VectorXd unit = impl_->L * z;
  FbmPath path{impl_->H, n, {}, {}, seed, GeneratorMethod::cholesky};
  path.deltas.resize(n);
  for (std::int64_t k = 0; k < n; ++k) path.deltas[k] = impl_->scale * unit(k);
  path.values = cumulative_path(path.deltas);
  return path;
}

std::vector<double> circulant_spectrum(const HurstParam& H, std::int64_t n) {
  if (n < 1) throw config_error("circulant_spectrum: n must be >= 1");
  const std::int64_t m = 2 * n;
  std::vector<double> c(m);
  for (std::int64_t j = 0; j <= n; ++j) c[j] = rho(H, j);
  for (std::int64_t j = n + 1; j < m; ++j) c[j] = c[m - j];

  std::vector<double> lambda(n + 1);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    double* in = fftw_alloc_real(m);
    fftw_complex* out = fftw_alloc_complex(n + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
    for (std::int64_t j = 0; j < m; ++j) in[j] = c[j];
    fftw_execute(plan);
    // Symmetric real input: the spectrum is real up to rounding.
    for (std::int64_t k = 0; k <= n; ++k) lambda[k] = out[k][0];
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  return lambda;
}

struct CirculantSampler::Impl {
  HurstParam H;
  std::int64_t n;
  std::int64_t m;
  double scale;  // n^{-H}
  std::vector<double> amp;  // sqrt(lambda_k / m), k = 0..n
  fftw_complex* in = nullptr;
  double* out = nullptr;
  fftw_plan plan = nullptr;
};

CirculantSampler::CirculantSampler(const HurstParam& H, std::int64_t n)
    : impl_(new Impl{H, n, 2 * n, 0.0, {}, nullptr, nullptr, nullptr}) {
  if (n < 1) throw config_error("CirculantSampler: n must be >= 1");
  std::vector<double> lambda = circulant_spectrum(H, n);
  double max_eig = 0.0;
  for (double l : lambda) max_eig = std::max(max_eig, l);
  const double eps_tol = 1e-10 * max_eig;
  for (double& l : lambda) {
    if (l < -eps_tol)
      throw embedding_spectrum_error(
          "circulant embedding has eigenvalue " + std::to_string(l) +
          " below -1e-10 * max; refusing to clip (H=" + std::to_string(H.value()) +
          ", n=" + std::to_string(n) + ")");
    if (l < 0.0) l = 0.0;
  }
  impl_->scale = std::pow(static_cast<double>(n), -H.value());
  impl_->amp.resize(n + 1);
  for (std::int64_t k = 0; k <= n; ++k)
    impl_->amp[k] = std::sqrt(lambda[k] / static_cast<double>(impl_->m));

  std::lock_guard<std::mutex> lock(fftw_mutex());
  impl_->in = fftw_alloc_complex(n + 1);
  impl_->out = fftw_alloc_real(impl_->m);
  impl_->plan = fftw_plan_dft_c2r_1d(static_cast<int>(impl_->m), impl_->in, impl_->out,
                                     FFTW_ESTIMATE);
}

CirculantSampler::~CirculantSampler() {
  std::lock_guard<std::mutex> lock(fftw_mutex());
  if (impl_->plan) fftw_destroy_plan(impl_->plan);
  if (impl_->in) fftw_free(impl_->in);
  if (impl_->out) fftw_free(impl_->out);
}

std::int64_t CirculantSampler::n() const { return impl_->n; }

FbmPath CirculantSampler::sample(std::uint64_t seed) const {
  const std::int64_t n = impl_->n;
  NormalStream stream(seed);
  const double inv_sqrt2 = 0x1.6a09e667f3bcdp-1;  // 1/sqrt(2)
  // Hermitian half spectrum: endpoints real, interior complex. Draw order is
  // fixed (k = 0, then pairs for k = 1..n-1, then k = n) for reproducibility.
  impl_->in[0][0] = impl_->amp[0] * stream.next_normal();
  impl_->in[0][1] = 0.0;
  for (std::int64_t k = 1; k < n; ++k) {
    const double u = stream.next_normal();
    const double v = stream.next_normal();
    impl_->in[k][0] = impl_->amp[k] * u * inv_sqrt2;
    impl_->in[k][1] = impl_->amp[k] * v * inv_sqrt2;
  }
  impl_->in[n][0] = impl_->amp[n] * stream.next_normal();
  impl_->in[n][1] = 0.0;

  fftw_execute(impl_->plan);

  FbmPath path{impl_->H, n, {}, {}, seed, GeneratorMethod::circulant};
  path.deltas.resize(n);
  for (std::int64_t k = 0; k < n; ++k) path.deltas[k] = impl_->scale * impl_->out[k];
  path.values = cumulative_path(path.deltas);
  return path;
}

FbmPath generate_cholesky(const HurstParam& H, std::int64_t n, std::uint64_t seed,
                          std::int64_t cap) {
  return CholeskySampler(H, n, cap).sample(seed);
}

FbmPath generate_circulant(const HurstParam& H, std::int64_t n, std::uint64_t seed) {
  return CirculantSampler(H, n).sample(seed);
}

void write_path_csv(const FbmPath& path, std::ostream& out) {
  char line[96];
  std::snprintf(line, sizeof line, "# hermvar csv v1 path H=%.17g n=%lld seed=%llu method=%s\n",
                path.H.value(), static_cast<long long>(path.n),
                static_cast<unsigned long long>(path.seed), method_name(path.method));
  out << line << "k,t,B\n";
  for (std::int64_t k = 0; k <= path.n; ++k) {
    std::snprintf(line, sizeof line, "%lld,%.17g,%.17g\n", static_cast<long long>(k),
                  static_cast<double>(k) / static_cast<double>(path.n), path.values[k]);
    out << line;
  }
  if (!out) throw io_error("write_path_csv: stream failure");
}

}  // namespace hermvar
