#pragma once

#include "qmdisc/disc_flows.hpp"
#include "qmdisc/rng.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace qmdisc::testing {

inline Rational random_rational(SplitMix64& rng, long lo, long hi, long den) {
  return make_rational(rng.uniform_int(lo, hi), den);
}

/// One to three C^1 bumps with random supports inside (0,1) and random
/// (never zero) weights.
inline RadialProfile random_profile(SplitMix64& rng) {
  std::vector<std::pair<Rational, RadialProfile>> terms;
  const long bumps = rng.uniform_int(1, 3);
  for (long k = 0; k < bumps; ++k) {
    const Rational a = random_rational(rng, 2, 40, 64);
    const Rational b = a + random_rational(rng, 6, 20, 64);
    terms.emplace_back(random_rational(rng, -40, 40, 8) + make_rational(1, 16),
                       bump_profile(a, b, 64));
  }
  return linear_combination(terms);
}

inline Point random_disc_point(SplitMix64& rng) {
  const double r = std::sqrt(rng.uniform());
  const double a = 2 * std::numbers::pi * rng.uniform();
  return {r * std::cos(a), r * std::sin(a)};
}

/// Rigid rotation of the whole disc by `angle`.
inline FlowSpec rigid_rotation(double angle) {
  return FlowSpec::unchecked({{linear_profile(make_rational(1, 2)), angle}});
}

}  // namespace qmdisc::testing
