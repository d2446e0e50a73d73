#ifndef HERMVAR_HERMITE_HPP
#define HERMVAR_HERMITE_HPP

#include <cstdint>
#include <vector>

namespace hermvar {

// Probabilists' Hermite polynomial H_q(x) by the forward recurrence
// H_0 = 1, H_1 = x, H_{m+1}(x) = x H_m(x) - m H_{m-1}(x). Requires 0 <= q <= 64.
double hermite_eval(int q, double x);

struct ProductCheck {
  double lhs;  // H_p(x) * H_q(x)
  double rhs;  // sum_r r! C(p,r) C(q,r) H_{p+q-2r}(x)
};

// Both sides of the product-linearization identity, for validation sweeps.
ProductCheck hermite_product_check(int p, int q, double x);

// Nodes and weights integrating exactly against the standard Gaussian:
// sum_i w_i f(x_i) = E[f(Z)] for polynomials f of degree <= 2m-1. Computed by
// diagonalizing the Jacobi matrix of the Hermite recurrence.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int m);

// E[H_p(Z) H_q(Z)] under the standard Gaussian via a quadrature rule sized to
// integrate degree p+q exactly; equals q! when p = q and 0 otherwise.
// Requires p+q <= 40 so the rule stays within its exactness budget.
double gauss_hermite_inner(int p, int q);

}  // namespace hermvar

#endif
