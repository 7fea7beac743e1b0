#include "qmdisc/errors.hpp"
#include "qmdisc/polynomial.hpp"
#include "qmdisc/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace qmdisc;

namespace {

Polynomial linear_factor(const Rational& root) { return Polynomial({-root, Rational(1)}); }

Rational r(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST_CASE("arithmetic and calculus") {
  const Polynomial p({1, 2, 3});  // 1 + 2y + 3y^2
  CHECK(p(r(2)) == 17);
  CHECK(p.derivative() == Polynomial({2, 6}));
  CHECK(p.antiderivative() == Polynomial({0, 1, 1, 1}));
  CHECK(p.integrate(0, 1) == 3);
  CHECK(p.compose_linear(2, 1)(r(1)) == p(r(3)));
  CHECK((p - p).is_zero());
  CHECK(Polynomial::monomial(r(5), 3).degree() == 3);
}

TEST_CASE("division and gcd") {
  const Polynomial a = linear_factor(r(1, 2)) * linear_factor(r(3)) * linear_factor(r(-2));
  const Polynomial b = linear_factor(r(3)) * linear_factor(r(7));
  const auto [q, rem] = divide(a, b);
  CHECK(q * b + rem == a);
  CHECK(rem.degree() < b.degree());
  CHECK(gcd(a, b) == linear_factor(r(3)));
  CHECK(squarefree_part(a * a * b) == (Rational(1) * a * linear_factor(r(7))));
  CHECK_THROWS_AS(divide(a, Polynomial()), InputError);
}

TEST_CASE("property: root counts of products of known linear factors") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<Rational> roots;
    Polynomial p({Rational(rng.uniform_int(1, 5))});
    const long factors = rng.uniform_int(1, 5);
    for (long k = 0; k < factors; ++k) {
      const Rational root = r(rng.uniform_int(-20, 20), rng.uniform_int(1, 6));
      roots.insert(root);
      const long power = rng.uniform_int(1, 3);
      for (long m = 0; m < power; ++m) p = p * linear_factor(root);
    }
    const Rational a = r(rng.uniform_int(-25, 0), 4);
    const Rational b = a + r(rng.uniform_int(1, 40), 4);
    const long expected = std::count_if(roots.begin(), roots.end(),
                                        [&](const Rational& x) { return a < x && x < b; });
    CHECK(count_roots(p, a, b) == expected);
  }
}

TEST_CASE("nonnegativity and sign") {
  const Polynomial two({-2, 0, 1});  // y^2 - 2, irrational roots
  CHECK(nonnegative_on(two * two, -3, 3));
  CHECK_FALSE(nonnegative_on(two, -3, 3));
  CHECK(nonnegative_on(two, 2, 3));
  CHECK(count_roots(two, 0, 2) == 1);
  CHECK(count_roots(two * two * linear_factor(r(1)), -2, 2) == 3);
  // Touching zero at a rational point from both sides.
  const Polynomial touch = linear_factor(r(1, 3)) * linear_factor(r(1, 3)) * linear_factor(r(5));
  CHECK_FALSE(nonnegative_on(touch, 0, 1));
  CHECK(nonnegative_on(Rational(-1) * touch, 0, 1));
  CHECK(sign_on(Rational(-1) * touch, 0, r(1, 3)) == 1);
  CHECK(sign_on(Rational(-1) * touch, 0, 1) == 0);
  CHECK(sign_on(touch, r(1, 3), 1) == -1);
  CHECK(nonnegative_on(Polynomial(), 0, 1));
  CHECK(sign_on(Polynomial(), 0, 1) == 0);

  SplitMix64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    // Squares of random quadratics are nonnegative; one extra simple root
    // inside the interval makes them change sign.
    const Polynomial q({Rational(rng.uniform_int(-9, 9)), Rational(rng.uniform_int(-9, 9)),
                        Rational(rng.uniform_int(1, 9))});
    CHECK(nonnegative_on(q * q, -5, 5));
    CHECK_FALSE(nonnegative_on(q * q * linear_factor(r(rng.uniform_int(-19, 19), 4)), -5, 5));
  }
}
