#include "hermvar/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermvar {
namespace {

// |rho_H(h)|^a for h = 0..len-1.
std::vector<double> abs_rho_powers(const HurstParam& H, std::int64_t len, double a) {
  std::vector<double> table(len);
  for (std::int64_t h = 0; h < len; ++h) table[h] = std::pow(std::fabs(rho(H, h)), a);
  return table;
}

}  // namespace

AlphaBounds alpha_bounds(const HurstParam& H, std::int64_t n, int t_grid_size) {
  if (n < 1) throw std::invalid_argument("alpha_bounds: n must be >= 1");
  if (t_grid_size < 2) throw std::invalid_argument("alpha_bounds: need at least 2 grid points");
  const double a = 2.0 * H.value();
  // (j/n)^{2H} for j = 0..n, shared across all t.
  std::vector<double> v(n + 1);
  for (std::int64_t j = 0; j <= n; ++j)
    v[j] = std::pow(static_cast<double>(j) / static_cast<double>(n), a);

  AlphaBounds out{0.0, 0.0};
  std::vector<double> u(n + 1);
  for (int i = 0; i < t_grid_size; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(t_grid_size - 1);
    double abs_sum = 0.0;
    if (H.is_brownian()) {
      for (std::int64_t k = 0; k < n; ++k) {
        const double al = alpha(H, n, k, t);
        out.max_abs = std::max(out.max_abs, std::fabs(al));
        abs_sum += std::fabs(al);
      }
    } else {
      for (std::int64_t j = 0; j <= n; ++j)
        u[j] = std::pow(std::fabs(t - static_cast<double>(j) / static_cast<double>(n)), a);
      for (std::int64_t k = 0; k < n; ++k) {
        const double al = 0.5 * ((v[k + 1] - v[k]) - (u[k + 1] - u[k]));
        out.max_abs = std::max(out.max_abs, std::fabs(al));
        abs_sum += std::fabs(al);
      }
    }
    out.max_abs_sum = std::max(out.max_abs_sum, abs_sum);
  }
  return out;
}

double beta_power_sum(const HurstParam& H, std::int64_t n, double a, std::int64_t i) {
  if (n < 1) throw std::invalid_argument("beta_power_sum: n must be >= 1");
  if (i < 0 || i >= n) throw std::invalid_argument("beta_power_sum: index outside [0, n)");
  if (!(a > 0.0)) throw std::invalid_argument("beta_power_sum: a must be positive");
  const double grid_scale = std::pow(std::pow(static_cast<double>(n), -2.0 * H.value()), a);
  double sum = 0.0;
  for (std::int64_t j = 0; j < n; ++j) sum += std::pow(std::fabs(rho(H, j - i)), a);
  return grid_scale * sum;
}

double beta_power_double_sum(const HurstParam& H, std::int64_t n, double a) {
  if (n < 1) throw std::invalid_argument("beta_power_double_sum: n must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("beta_power_double_sum: a must be positive");
  const double grid_scale = std::pow(std::pow(static_cast<double>(n), -2.0 * H.value()), a);
  const std::vector<double> r = abs_rho_powers(H, n, a);
  double sum = static_cast<double>(n) * r[0];
  for (std::int64_t h = 1; h < n; ++h) sum += 2.0 * static_cast<double>(n - h) * r[h];
  return grid_scale * sum;
}

double triple_beta_sum(const HurstParam& H, std::int64_t n, double a, double b, std::int64_t l) {
  if (n < 1) throw std::invalid_argument("triple_beta_sum: n must be >= 1");
  if (l < 0 || l >= n) throw std::invalid_argument("triple_beta_sum: index outside [0, n)");
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("triple_beta_sum: powers > 0");
  const double nd = static_cast<double>(n);
  const double grid_scale = std::pow(std::pow(nd, -2.0 * H.value()), 2.0 * a + b);
  const std::vector<double> rb = abs_rho_powers(H, n, b);
  std::vector<double> pa(n);  // |rho(j - l)|^a
  for (std::int64_t j = 0; j < n; ++j) pa[j] = std::pow(std::fabs(rho(H, j - l)), a);
  double sum = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    double inner = 0.0;
    for (std::int64_t jp = 0; jp < n; ++jp) inner += pa[jp] * rb[std::llabs(j - jp)];
    sum += pa[j] * inner;
  }
  return grid_scale * sum;
}

double beta_power_sum_exponent(const HurstParam& H, double a) {
  return std::max(1.0 - 2.0 * a, -2.0 * a * H.value());
}

double beta_power_double_sum_exponent(const HurstParam& H, double a) {
  return std::max(2.0 - 2.0 * a, 1.0 - 2.0 * a * H.value());
}

double triple_beta_sum_exponent(const HurstParam& H, double a, double b) {
  const double w = 2.0 * a + b;
  return std::max(-2.0 * H.value() * w, 2.0 - 2.0 * w);
}

ExponentFit fit_exponent(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i].first > points[i - 1].first))
      throw std::invalid_argument("fit_exponent: n values must be strictly increasing");
    if (!(points[i].second > 0.0))
      throw numeric_range_error("fit_exponent: values must be strictly positive");
  }
  const std::size_t m = points.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = std::log(points[i].first);
    ys[i] = std::log(points[i].second);
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ExponentFit fit;
  fit.points.assign(points.begin(), points.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.max_residual = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    fit.max_residual = std::max(fit.max_residual,
                                std::fabs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  fit.tail_slope = (ys[m - 1] - ys[m - 2]) / (xs[m - 1] - xs[m - 2]);
  return fit;
}

}  // namespace hermvar
