#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "hermvar/errors.hpp"
#include "hermvar/weight.hpp"

using namespace hermvar;

TEST_CASE("built-in weight catalog evaluates correctly") {
  const WeightFunction one = weight_one();
  const WeightFunction id = weight_identity();
  const WeightFunction sq = weight_square();
  const WeightFunction co = weight_cos();
  const WeightFunction iq = weight_inverse_quadratic();

  for (double x : {-2.0, -0.3, 0.0, 1.0, 3.7}) {
    CHECK(one(x) == 1.0);
    CHECK(one.eval(1, x) == 0.0);
    CHECK(id(x) == x);
    CHECK(id.eval(1, x) == 1.0);
    CHECK(id.eval(2, x) == 0.0);
    CHECK(sq(x) == x * x);
    CHECK(sq.eval(1, x) == 2.0 * x);
    CHECK(sq.eval(2, x) == 2.0);
    CHECK(co(x) == doctest::Approx(std::cos(x)).epsilon(1e-15));
    CHECK(co.eval(1, x) == doctest::Approx(-std::sin(x)).epsilon(1e-15));
    CHECK(co.eval(4, x) == doctest::Approx(std::cos(x)).epsilon(1e-15));
    CHECK(iq(x) == doctest::Approx(1.0 / (1.0 + x * x)).epsilon(1e-15));
  }
}

TEST_CASE("inverse quadratic derivatives match central differences") {
  const WeightFunction iq = weight_inverse_quadratic();
  const double h = 1e-5;
  for (int order = 1; order <= 3; ++order) {
    for (double x : {-1.7, -0.4, 0.0, 0.8, 2.5}) {
      const double numeric =
          (iq.eval(order - 1, x + h) - iq.eval(order - 1, x - h)) / (2.0 * h);
      CHECK(iq.eval(order, x) == doctest::Approx(numeric).epsilon(1e-7));
    }
  }
}

TEST_CASE("derivative orders past the declared maximum are refused") {
  const WeightFunction iq = weight_inverse_quadratic();
  CHECK_THROWS_AS(iq.eval(iq.max_order() + 1, 0.5), missing_derivative_error);
  CHECK_THROWS_AS(iq.eval(-1, 0.5), std::invalid_argument);

  const WeightFunction co = weight_cos();
  CHECK(co.max_order() >= 8);
  CHECK_THROWS_AS(co.eval(co.max_order() + 1, 0.0), missing_derivative_error);
}

TEST_CASE("construction rejects an inconsistent derivative family") {
  // Claims d/dx x^2 = 3x; the forward-difference cross-check must catch it.
  auto broken = [](int order, double x) -> double {
    if (order == 0) return x * x;
    if (order == 1) return 3.0 * x;
    return 0.0;
  };
  CHECK_THROWS_AS(WeightFunction("broken", 1, GrowthClass::polynomial, broken),
                  std::invalid_argument);

  // The same family with the correct derivative is accepted.
  auto fixed = [](int order, double x) -> double {
    if (order == 0) return x * x;
    if (order == 1) return 2.0 * x;
    return 0.0;
  };
  const WeightFunction ok("fixed", 1, GrowthClass::polynomial, fixed);
  CHECK(ok(3.0) == 9.0);
}

TEST_CASE("catalog lookup by label") {
  CHECK(weight_by_label("one").label() == "one");
  CHECK(weight_by_label("identity").label() == "identity");
  CHECK(weight_by_label("square").label() == "square");
  CHECK(weight_by_label("cos").label() == "cos");
  CHECK(weight_by_label("invquad").label() == "invquad");
  CHECK(weight_by_label("identity")(2.5) == 2.5);
  CHECK_THROWS_AS(weight_by_label("nope"), config_error);
}
