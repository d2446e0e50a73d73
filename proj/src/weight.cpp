#include "hermvar/weight.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "hermvar/errors.hpp"

namespace hermvar {
namespace {

// Forward-difference sanity check of consecutive derivative orders on a small
// grid. Catches families whose entries don't differentiate into each other.
void check_consistency(const std::string& label, int max_order,
                       const std::function<double(int, double)>& family) {
  constexpr double h = 1e-6;
  constexpr double grid[6] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  const int top = std::min(max_order, 6);
  for (int i = 0; i < top; ++i) {
    for (double x : grid) {
      const double diff = (family(i, x + h) - family(i, x)) / h;
      const double d = family(i + 1, x);
      if (!(std::fabs(diff - d) <= 1e-3 * (1.0 + std::fabs(d))))
        throw std::invalid_argument("weight family '" + label +
                                    "': derivative order " + std::to_string(i + 1) +
                                    " inconsistent with forward difference");
    }
  }
}

}  // namespace

WeightFunction::WeightFunction(std::string label, int max_order, GrowthClass growth,
                               std::function<double(int, double)> family)
    : label_(std::move(label)), max_order_(max_order), growth_(growth),
      family_(std::move(family)) {
  if (max_order_ < 0) throw std::invalid_argument("WeightFunction: negative derivative order");
  check_consistency(label_, max_order_, family_);
}

double WeightFunction::eval(int order, double x) const {
  if (order < 0 || order > max_order_)
    throw missing_derivative_error("weight family '" + label_ + "' has no derivative of order " +
                                   std::to_string(order));
  return family_(order, x);
}

WeightFunction weight_one() {
  return {"one", 64, GrowthClass::polynomial,
          [](int m, double) { return m == 0 ? 1.0 : 0.0; }};
}

WeightFunction weight_identity() {
  return {"identity", 64, GrowthClass::polynomial, [](int m, double x) {
            if (m == 0) return x;
            return m == 1 ? 1.0 : 0.0;
          }};
}

WeightFunction weight_square() {
  return {"square", 64, GrowthClass::polynomial, [](int m, double x) {
            switch (m) {
              case 0: return x * x;
              case 1: return 2.0 * x;
              case 2: return 2.0;
              default: return 0.0;
            }
          }};
}

WeightFunction weight_cos() {
  return {"cos", 64, GrowthClass::moderate, [](int m, double x) {
            switch (m & 3) {
              case 0: return std::cos(x);
              case 1: return -std::sin(x);
              case 2: return -std::cos(x);
              default: return std::sin(x);
            }
          }};
}

WeightFunction weight_inverse_quadratic() {
  // 1/(1+x^2) = Im (x-i)^{-1}, so the m-th derivative is Im[(-1)^m m! (x-i)^{-m-1}].
  return {"invquad", 64, GrowthClass::moderate, [](int m, double x) {
            double mfact = 1.0;
            for (int i = 2; i <= m; ++i) mfact *= i;
            const std::complex<double> z(x, -1.0);
            const std::complex<double> w = std::pow(z, -(m + 1.0));
            return (m % 2 == 0 ? mfact : -mfact) * w.imag();
          }};
}

WeightFunction weight_by_label(const std::string& label) {
  if (label == "one") return weight_one();
  if (label == "identity") return weight_identity();
  if (label == "square") return weight_square();
  if (label == "cos") return weight_cos();
  if (label == "invquad") return weight_inverse_quadratic();
  throw config_error("unknown weight function '" + label + "'");
}

}  // namespace hermvar
