#include "hermvar/hermite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermvar {
namespace {

double binom(int n, int r) {
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b *= static_cast<double>(n - r + i) / i;
  return b;
}

}  // namespace

double hermite_eval(int q, double x) {
  if (q < 0 || q > 64) throw std::invalid_argument("hermite_eval: order must be in [0, 64]");
  if (q == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int m = 1; m < q; ++m) {
    const double next = x * cur - m * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ProductCheck hermite_product_check(int p, int q, double x) {
  const double lhs = hermite_eval(p, x) * hermite_eval(q, x);
  double rhs = 0.0;
  double rfact = 1.0;
  for (int r = 0; r <= std::min(p, q); ++r) {
    if (r > 0) rfact *= r;
    rhs += rfact * binom(p, r) * binom(q, r) * hermite_eval(p + q - 2 * r, x);
  }
  return {lhs, rhs};
}

GaussHermiteRule gauss_hermite_rule(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite_rule: need at least one node");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) {
    const double off = std::sqrt(static_cast<double>(i));
    J(i, i - 1) = off;
    J(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  GaussHermiteRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;  // total mass of the standard Gaussian is 1
  }
  return rule;
}

double gauss_hermite_inner(int p, int q) {
  if (p < 0 || q < 0 || p + q > 40)
    throw std::invalid_argument("gauss_hermite_inner: need p,q >= 0 and p+q <= 40");
  const int m = (p + q) / 2 + 1;
  const GaussHermiteRule rule = gauss_hermite_rule(m);
  double sum = 0.0;
  for (int i = 0; i < m; ++i)
    sum += rule.weights[i] * hermite_eval(p, rule.nodes[i]) * hermite_eval(q, rule.nodes[i]);
  return sum;
}

}  // namespace hermvar
