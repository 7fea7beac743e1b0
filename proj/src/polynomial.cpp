#include "qmdisc/polynomial.hpp"

#include "qmdisc/errors.hpp"

#include <algorithm>

namespace qmdisc {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& y) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return Polynomial();
  std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k + 1] = coeffs_[k] / static_cast<long>(k + 1);
  }
  return Polynomial(std::move(out));
}

Rational Polynomial::integrate(const Rational& a, const Rational& b) const {
  const Polynomial anti = antiderivative();
  return anti(b) - anti(a);
}

Polynomial Polynomial::compose_linear(const Rational& scale, const Rational& shift) const {
  const Polynomial inner(std::vector<Rational>{shift, scale});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * inner + Polynomial(std::vector<Rational>{*it});
  }
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + Rational(-1) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& v : out) v *= c;
  return Polynomial(std::move(out));
}

FastPolynomial::FastPolynomial(const Polynomial& p) {
  coeffs_.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) coeffs_.push_back(to_double(c));
}

}  // namespace qmdisc

namespace qmdisc {

std::pair<Polynomial, Polynomial> divide(const Polynomial& numerator, const Polynomial& divisor) {
  if (divisor.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Rational> rem = numerator.coefficients();
  const auto& d = divisor.coefficients();
  const int dd = divisor.degree();
  if (numerator.degree() < dd) return {Polynomial(), numerator};
  std::vector<Rational> quot(numerator.degree() - dd + 1, Rational(0));
  for (int k = numerator.degree() - dd; k >= 0; --k) {
    const Rational c = rem[k + dd] / d[dd];
    quot[k] = c;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= c * d[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divide(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return (1 / x.coefficients().back()) * x;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() < 1) return p;
  return divide(p, gcd(p, p.derivative())).first;
}

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& squarefree) {
  std::vector<Polynomial> chain{squarefree, squarefree.derivative()};
  while (!chain.back().is_zero()) {
    const auto r = divide(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(Rational(-1) * r);
  }
  chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const Rational v = q(x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Root counting and isolation for one squarefree polynomial.
class RootCounter {
 public:
  explicit RootCounter(const Polynomial& p) : s_(squarefree_part(p)), chain_(sturm_chain(s_)) {}

  bool is_root(const Rational& x) const { return s_(x) == 0; }

  // Roots in (l, r) for non-roots l < r.
  int between(const Rational& l, const Rational& r) const {
    return sign_changes(chain_, l) - sign_changes(chain_, r);
  }

  // A non-root q strictly between `root` and `toward` with no root in
  // (root, q].
  Rational nudge(const Rational& root, const Rational& toward) const {
    Rational delta = (toward - root) / 2;
    for (;;) {
      const Rational q = root + delta;
      const Rational mirror = root - delta;
      if (!is_root(q) && !is_root(mirror)) {
        const bool up = q > mirror;
        if (between(up ? mirror : q, up ? q : mirror) == 1) return q;
      }
      delta /= 2;
    }
  }

  // Roots in the open interval (a, b), any a < b.
  int open(const Rational& a, const Rational& b) const {
    const Rational l = is_root(a) ? nudge(a, b) : a;
    const Rational r = is_root(b) ? nudge(b, a) : b;
    return between(l, r);
  }

 private:
  Polynomial s_;
  std::vector<Polynomial> chain_;
};

// p >= 0 on (l, r); l and r may be roots.
bool nonnegative_between(const Polynomial& p, const RootCounter& roots, const Rational& l,
                         const Rational& r) {
  const int n = roots.open(l, r);
  if (n == 0) return p((l + r) / 2) > 0;
  if (n == 1) {
    // The two gaps around the single root reach l and r.
    const Rational left = roots.is_root(l) ? roots.nudge(l, r) : l;
    const Rational right = roots.is_root(r) ? roots.nudge(r, l) : r;
    return p(left) > 0 && p(right) > 0;
  }
  const Rational m = (l + r) / 2;
  if (!roots.is_root(m) && p(m) < 0) return false;
  return nonnegative_between(p, roots, l, m) && nonnegative_between(p, roots, m, r);
}

}  // namespace

int count_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw InputError("count_roots needs a < b");
  if (p.is_zero()) throw InputError("the zero polynomial has infinitely many roots");
  if (p.degree() == 0) return 0;
  return RootCounter(p).open(a, b);
}

bool nonnegative_on(const Polynomial& p, const Rational& a, const Rational& b) {
  if (!(a <= b)) throw InputError("nonnegative_on needs a <= b");
  if (p.is_zero()) return true;
  if (p(a) < 0 || p(b) < 0) return false;
  if (a == b || p.degree() == 0) return true;
  return nonnegative_between(p, RootCounter(p), a, b);
}

int sign_on(const Polynomial& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw InputError("sign_on needs a < b");
  if (p.is_zero()) return 0;
  if (p.degree() > 0 && RootCounter(p).open(a, b) != 0) return 0;
  const Rational v = p((a + b) / 2);
  return v > 0 ? 1 : -1;
}

}  // namespace qmdisc
