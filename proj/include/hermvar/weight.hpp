#ifndef HERMVAR_WEIGHT_HPP
#define HERMVAR_WEIGHT_HPP

#include <functional>
#include <string>

namespace hermvar {

enum class GrowthClass { polynomial, moderate };

// A weight function together with its derivative family. The evaluator takes
// (order, x) and must return f^{(order)}(x) for every order <= max_order.
// Construction cross-checks consecutive derivative orders against a forward
// difference so mismatched families are rejected up front.
class WeightFunction {
 public:
  WeightFunction(std::string label, int max_order, GrowthClass growth,
                 std::function<double(int, double)> family);

  // f^{(order)}(x); throws missing_derivative_error when order > max_order.
  double eval(int order, double x) const;
  double operator()(double x) const { return eval(0, x); }

  const std::string& label() const { return label_; }
  int max_order() const { return max_order_; }
  GrowthClass growth() const { return growth_; }

 private:
  std::string label_;
  int max_order_;
  GrowthClass growth_;
  std::function<double(int, double)> family_;
};

// Built-in catalog.
WeightFunction weight_one();                // f(x) = 1
WeightFunction weight_identity();           // f(x) = x
WeightFunction weight_square();             // f(x) = x^2
WeightFunction weight_cos();                // f(x) = cos x
WeightFunction weight_inverse_quadratic();  // f(x) = 1/(1+x^2)

// Catalog lookup by label ("one", "identity", "square", "cos", "invquad").
WeightFunction weight_by_label(const std::string& label);

}  // namespace hermvar

#endif
