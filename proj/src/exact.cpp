#include "qmdisc/exact.hpp"

#include "qmdisc/errors.hpp"

#include <cctype>

namespace qmdisc {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(const std::string& s) {
  if (s.empty()) throw InputError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InputError("bad integer literal '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw InputError("bad integer literal '" + s + "'");
    }
  }
  BigInt v(s.substr(i));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_integer(text));
  const std::string frac = text.substr(dot + 1);
  std::string whole = text.substr(0, dot);
  const bool negative = !whole.empty() && whole[0] == '-';
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  BigInt scale = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
  BigInt magnitude = abs(parse_integer(whole)) * scale +
                     (frac.empty() ? BigInt(0) : parse_integer(frac));
  if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
    throw InputError("bad decimal literal '" + text + "'");
  }
  return Rational(negative ? BigInt(-magnitude) : magnitude, scale);
}

}  // namespace qmdisc
