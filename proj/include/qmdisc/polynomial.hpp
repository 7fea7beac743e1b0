#pragma once

#include "qmdisc/exact.hpp"

#include <utility>
#include <vector>

namespace qmdisc {

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. Trailing zero coefficients are trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial monomial(const Rational& c, int degree);

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Rational operator()(const Rational& y) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;
  /// Exact integral over [a, b].
  Rational integrate(const Rational& a, const Rational& b) const;
  /// p(scale * y + shift).
  Polynomial compose_linear(const Rational& scale, const Rational& shift) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of polynomial division. Throws InputError when
/// dividing by zero.
std::pair<Polynomial, Polynomial> divide(const Polynomial& numerator, const Polynomial& divisor);

/// Monic greatest common divisor (zero when both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// p divided by gcd(p, p'): same roots, all simple.
Polynomial squarefree_part(const Polynomial& p);

/// Number of distinct real roots in the open interval (a, b), by Sturm
/// sequences. Exact.
int count_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Exact test of p(y) >= 0 for all y in [a, b].
bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b);

/// +1 if p > 0 on the open interval (a, b), -1 if p < 0 there, else 0.
int sign_on(const Polynomial& p, const Rational& a, const Rational& b);

/// Double-precision Horner evaluation cache for a Polynomial.
class FastPolynomial {
 public:
  FastPolynomial() = default;
  explicit FastPolynomial(const Polynomial& p);
  double operator()(double y) const noexcept {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
    return acc;
  }

 private:
  std::vector<double> coeffs_;
};

}  // namespace qmdisc
