#include "qmdisc/disc_flows.hpp"
#include "qmdisc/errors.hpp"
#include "qmdisc/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qmdisc;
using namespace qmdisc::testing;
using std::numbers::pi;

namespace {

RadialProfile parabola() {  // y (1 - y) on [0,1]
  return RadialProfile({{Rational(0), Rational(1), Polynomial({0, 1, -1})}}, 0);
}

double angle_of(Point p) { return std::atan2(p.y, p.x); }

double wrap(double a) { return std::remainder(a, 2 * pi); }

}  // namespace

TEST_CASE("profile validation") {
  // Jump at 1/2.
  CHECK_THROWS_AS(RadialProfile({{make_rational(1, 4), make_rational(1, 2), Polynomial({1})}}, 0),
                  InputError);
  // Continuous but with a kink at 1/2 when C^1 is requested.
  const Polynomial up({make_rational(-1, 4), Rational(1)});    // y - 1/4
  const Polynomial down({make_rational(3, 4), Rational(-1)});  // 3/4 - y
  CHECK_NOTHROW(RadialProfile({{make_rational(1, 4), make_rational(1, 2), up},
                               {make_rational(1, 2), make_rational(3, 4), down}},
                              0));
  CHECK_THROWS_AS(RadialProfile({{make_rational(1, 4), make_rational(1, 2), up},
                                 {make_rational(1, 2), make_rational(3, 4), down}},
                                1),
                  InputError);
  CHECK_THROWS_AS(RadialProfile({{make_rational(1, 2), make_rational(1, 4), up}}, 0), InputError);
  CHECK_THROWS_AS(RadialProfile({{Rational(0), Rational(2), Polynomial({1})}}, 0), InputError);
  CHECK_NOTHROW(bump_profile(make_rational(1, 4), make_rational(3, 4)));
}

TEST_CASE("radial_flow_apply") {
  const Point p{0.3, -0.4};
  CHECK(radial_flow_apply(FlowSpec::identity(), p) == p);
  CHECK(radial_flow_apply(FlowSpec::unchecked({{RadialProfile(), 5.0}}), p) == p);

  const double alpha = 0.7;
  const FlowSpec rotation = FlowSpec::unchecked({{linear_profile(make_rational(1, 2)), alpha}});
  const Point q = radial_flow_apply(rotation, p);
  CHECK(std::sqrt(q.norm2()) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wrap(angle_of(q) - angle_of(p) - alpha) == doctest::Approx(0).epsilon(1e-14));
  const auto [r, theta] = radial_flow_apply_polar(rotation, 0.5, 1.0);
  CHECK(r == 0.5);
  CHECK(theta == doctest::Approx(1.0 + alpha));

  const FlowSpec bump =
      FlowSpec::checked({{bump_profile(make_rational(1, 4), make_rational(3, 4), 100), 3.0}});
  const Point boundary{std::cos(0.3), std::sin(0.3)};
  const Point moved = radial_flow_apply(bump, boundary);
  CHECK(moved.x == doctest::Approx(boundary.x).epsilon(1e-15));
  CHECK(moved.y == doctest::Approx(boundary.y).epsilon(1e-15));

  CHECK_THROWS_AS(radial_flow_apply(rotation, Point{1.0, 0.1}), InputError);
  CHECK_THROWS_AS(FlowSpec::checked({{linear_profile(1), 1.0}}), InputError);
}

TEST_CASE("property: radial flows preserve radius, compose additively and commute") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const RadialProfile h1 = random_profile(rng);
    const RadialProfile h2 = random_profile(rng);
    const double t1 = 2 * rng.uniform() - 1;
    const double t2 = 2 * rng.uniform() - 1;
    const double r = std::sqrt(rng.uniform());
    const double th = 2 * pi * rng.uniform();
    const Point p{r * std::cos(th), r * std::sin(th)};

    const FlowSpec f1 = FlowSpec::checked({{h1, t1}});
    const FlowSpec f12 = FlowSpec::checked({{h1, t1 + t2}});
    const Point composed = radial_flow_apply(f1, radial_flow_apply(FlowSpec::checked({{h1, t2}}), p));
    const Point direct = radial_flow_apply(f12, p);
    CHECK(std::sqrt(direct.norm2()) == doctest::Approx(r).epsilon(1e-14));
    CHECK(composed.x == doctest::Approx(direct.x).epsilon(1e-9));
    CHECK(composed.y == doctest::Approx(direct.y).epsilon(1e-9));

    const Point ab = radial_flow_apply(FlowSpec::checked({{h1, t1}, {h2, t2}}), p);
    const Point ba = radial_flow_apply(FlowSpec::checked({{h2, t2}, {h1, t1}}), p);
    CHECK(ab.x == doctest::Approx(ba.x).epsilon(1e-12));
    CHECK(ab.y == doctest::Approx(ba.y).epsilon(1e-12));

    const double c1 = calabi(FlowSpec::checked({{h1, t1}}));
    const double c2 = calabi(FlowSpec::checked({{h2, t2}}));
    CHECK(calabi(FlowSpec::checked({{h1, t1}, {h2, t2}})) == doctest::Approx(c1 + c2));
    CHECK(calabi(FlowSpec::checked({{h1, 3 * t1}})) == doctest::Approx(3 * c1));
  }
}

TEST_CASE("calabi and signature moments") {
  CHECK(calabi(FlowSpec::identity()) == 0);
  CHECK(calabi(FlowSpec::unchecked({{parabola(), 1.0}})) == doctest::Approx(pi / 3));
  CHECK(calabi(FlowSpec::checked({{make_hs_profile(make_rational(2, 7)), 5.0}})) == 0);

  CHECK(signature_moment(RadialProfile(), 3) == 0);
  CHECK(signature_moment(parabola(), 3) == make_rational(1, 12));
  CHECK(signature_moment(make_hs_profile(make_rational(1, 4)), 3) < 0);
  CHECK_THROWS_AS(signature_moment(parabola(), 2), InputError);
}

TEST_CASE("analytic L^p lengths") {
  CHECK(lp_length_radial(FlowSpec::identity(), 2) == 0);
  CHECK(lp_length_radial(FlowSpec::unchecked({{RadialProfile(), 1.0}}), 2) == 0);
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 7.0}) {
    const double alpha = 0.9;
    // h(y) = alpha y / 2 at t = 1, or h(y) = y / 2 at t = alpha.
    const double expected = alpha * std::pow(2 * pi / (p + 2), 1 / p);
    const double a = lp_length_radial(
        FlowSpec::unchecked({{linear_profile(make_rational(9, 20)), 1.0}}), p);
    const double b =
        lp_length_radial(FlowSpec::unchecked({{linear_profile(make_rational(1, 2)), alpha}}), p);
    CHECK(std::abs(a - expected) <= 1e-10 * expected);
    CHECK(std::abs(b - expected) <= 1e-10 * expected);
  }
  CHECK(lp_length_radial(FlowSpec::unchecked({{linear_profile(make_rational(1, 2)), 1.0}}), 1) ==
        doctest::Approx(2 * pi / 3).epsilon(1e-12));

  const RadialProfile hs = make_hs_profile(make_rational(3, 10));
  CHECK_THROWS_AS(lp_length_radial(FlowSpec::checked({{hs, 1.0}, {hs, 2.0}}), 2), InputError);
  CHECK_THROWS_AS(lp_length_radial(FlowSpec::checked({{hs, 1.0}}), 0.5), InputError);
}

TEST_CASE("quadrature agrees with exact integrals for even p") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const RadialProfile h = trial % 2 ? random_profile(rng)
                                      : make_hs_profile(make_rational(rng.uniform_int(24, 32), 96));
    for (int p : {2, 4, 6}) {
      const double exact = to_double(h.lp_integral_exact(p));
      CHECK(std::abs(h.lp_integral(p) - exact) <= 1e-10 * exact);
    }
  }
}

TEST_CASE("property: Holder comparison of L^1 and L^p lengths") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const FlowSpec f = FlowSpec::checked({{random_profile(rng), 4 * rng.uniform() - 2}});
    const double l1 = lp_length_radial(f, 1);
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
      CHECK(lp_length_radial(f, p) >= std::pow(pi, 1 / p - 1) * l1 * (1 - 1e-12));
    }
    CHECK(lp_length_radial(f.scaled(-2.5), 2) ==
          doctest::Approx(2.5 * lp_length_radial(f, 2)).epsilon(1e-12));
  }
}

TEST_CASE("h_s family") {
  const RadialProfile quarter = make_hs_profile(make_rational(1, 4));
  CHECK(quarter.support()->first == make_rational(1, 4));
  CHECK(quarter.support()->second == make_rational(3, 4));
  CHECK(quarter.moment(0) == 0);
  CHECK(quarter.smoothness() == 1);

  const RadialProfile third = make_hs_profile(make_rational(1, 3));
  CHECK(third.support()->first == make_rational(1, 6));
  CHECK(third.support()->second == make_rational(5, 6));

  for (long num = 24; num <= 32; ++num) {
    const Rational s = make_rational(num, 96);
    const RadialProfile h = make_hs_profile(s);
    CHECK(h.moment(0) == 0);
    CHECK(h.moment(1) < 0);
    // Lobe signs at interior sample points.
    for (long k = 1; k < 16; ++k) {
      const Rational off = s * make_rational(k, 16);
      CHECK(h.value(make_rational(1, 2) - off) > 0);
      CHECK(h.value(make_rational(1, 2) + off) < 0);
    }
    // Monotone in s on (3/8, 1/2): h_s' >= h_s where s' > s.
    const RadialProfile wider = make_hs_profile(s + make_rational(1, 96) > make_rational(1, 3)
                                                    ? s
                                                    : s + make_rational(1, 96));
    for (long k = 1; k < 8; ++k) {
      const Rational y = make_rational(3, 8) + make_rational(k, 64);
      CHECK(wider.value(y) >= h.value(y));
      CHECK(wider.value(y) == h.value(y));  // common core
    }
  }
  CHECK_THROWS_AS(make_hs_profile(make_rational(1, 5)), InputError);
  CHECK_THROWS_AS(make_hs_profile(make_rational(1, 2)), InputError);
}

TEST_CASE("numeric integrator matches the exact flow") {
  CHECK(integrate_flow_numeric(RadialProfile(), 1.0, Point{0.2, 0.1}, 1e-3) == Point{0.2, 0.1});

  const RadialProfile rot = linear_profile(make_rational(1, 2));
  const Point p{0.6, 0.2};
  const Point numeric = integrate_flow_numeric(rot, pi / 4, p, 1e-4);
  const Point exact = radial_flow_apply(FlowSpec::unchecked({{rot, pi / 4}}), p);
  CHECK(std::hypot(numeric.x - exact.x, numeric.y - exact.y) <= 1e-6);

  const RadialProfile hs = make_hs_profile(make_rational(2, 7));
  const auto map = [&hs](Point x) { return integrate_flow_numeric(hs, 0.8, x, 1e-3); };
  for (const Point x : {Point{0.6, 0.1}, Point{-0.3, 0.55}, Point{0.2, -0.7}}) {
    CHECK(std::abs(numeric_jacobian_determinant(map, x) - 1) <= 1e-4);
  }
}
