#include "qmdisc/errors.hpp"
#include "qmdisc/lp_metric.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qmdisc;
using namespace qmdisc::testing;
using std::numbers::pi;

namespace {

double rotation_length(double alpha, double p) {
  return std::abs(alpha) * std::pow(2 * pi / (p + 2), 1 / p);
}

}  // namespace

TEST_CASE("identity isotopy has zero length") {
  const auto r = lp_length_sampled([](double, Point x) { return x; }, 2, 8, 100, 1);
  CHECK(r.value == 0);
  CHECK(r.std_error == 0);
  CHECK(r.converged);
}

TEST_CASE("rigid rotation matches the closed form") {
  for (double alpha : {1.0, -2.5, 2 * pi}) {
    for (double p : {1.0, 2.0, 3.0}) {
      const auto r = lp_length_sampled(flow_isotopy(rigid_rotation(alpha)), p, 8, 50000, 3);
      CHECK(r.converged);
      CHECK(r.value == doctest::Approx(rotation_length(alpha, p)).epsilon(5e-3));
      CHECK(std::abs(r.value - rotation_length(alpha, p)) <= 3 * r.std_error + 1e-3 * r.value);
    }
  }
}

TEST_CASE("property: sampled lengths agree with the analytic radial formula") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const double t = 0.5 + 2 * rng.uniform();
    const FlowSpec f = FlowSpec::checked({{random_profile(rng), t}});
    for (double p : {1.0, 2.5}) {
      const auto r = lp_length_sampled(flow_isotopy(f), p, 8, 20000, 100 + trial);
      const double exact = lp_length_radial(f, p);
      CHECK(std::abs(r.value - exact) <= 3 * r.std_error + 1e-3 * exact);
    }
  }
}

TEST_CASE("time rescaling and worker count") {
  const FlowSpec f = FlowSpec::checked({{bump_profile(make_rational(1, 5), make_rational(4, 5), 50), 1.0}});
  const auto one = lp_length_sampled(flow_isotopy(f), 2, 8, 5000, 4);
  const auto three = lp_length_sampled(flow_isotopy(f.scaled(-3)), 2, 8, 5000, 4);
  CHECK(three.value == doctest::Approx(3 * one.value).epsilon(1e-6));

  LpOptions parallel;
  parallel.threads = 4;
  const auto again = lp_length_sampled(flow_isotopy(f), 2, 8, 5000, 4, parallel);
  CHECK(again.value == one.value);
  CHECK(again.std_error == one.std_error);
}

TEST_CASE("additivity under time concatenation") {
  const FlowSpec f = FlowSpec::checked({{bump_profile(make_rational(1, 5), make_rational(4, 5), 50), 1.0}});
  const FlowSpec g = FlowSpec::checked({{bump_profile(make_rational(1, 10), make_rational(1, 2), 120), 1.0}});
  const Isotopy gf = flow_isotopy(f);
  const Isotopy gg = flow_isotopy(g);
  const Isotopy both = [&](double t, Point x) {
    return t <= 0.5 ? gf(2 * t, x) : gg(2 * t - 1, gf(1, x));
  };
  const auto a = lp_length_sampled(gf, 2, 8, 20000, 6);
  const auto b = lp_length_sampled(gg, 2, 8, 20000, 6);
  const auto ab = lp_length_sampled(both, 2, 16, 20000, 6);
  CHECK(ab.value == doctest::Approx(a.value + b.value).epsilon(0.01));
}

TEST_CASE("holder constant") {
  CHECK(holder_constant(1) == 1);
  CHECK(holder_constant(2) == doctest::Approx(1 / std::sqrt(pi)));
  CHECK_THROWS_AS(holder_constant(0.5), InputError);

  SplitMix64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const FlowSpec f = FlowSpec::checked({{random_profile(rng), 0.1 + 3 * rng.uniform()}});
    const double p = 1 + 4 * rng.uniform();
    CHECK(lp_length_radial(f, 1) <= lp_length_radial(f, p) / holder_constant(p) * (1 + 1e-12));
  }
}

TEST_CASE("lengths of sampled trajectories") {
  SplitMix64 rng(31);
  const double alpha = 2.0;
  const int strands = 4000;
  std::vector<Point> start(strands);
  for (auto& x : start) x = random_disc_point(rng);
  std::vector<double> times;
  std::vector<std::vector<Point>> rows;
  for (int k = 0; k <= 50; ++k) {
    const double a = alpha * k / 50;
    std::vector<Point> row;
    for (const Point x : start) {
      row.push_back({std::cos(a) * x.x - std::sin(a) * x.y, std::sin(a) * x.x + std::cos(a) * x.y});
    }
    times.push_back(k / 50.0);
    rows.push_back(std::move(row));
  }
  const auto r = lp_length_trajectory(TrajectoryBundle(times, rows), 2);
  CHECK(std::abs(r.value - rotation_length(alpha, 2)) <= 3 * r.std_error + 1e-3);
}

TEST_CASE("argument checks") {
  const auto id = [](double, Point x) { return x; };
  CHECK_THROWS_AS(lp_length_sampled(id, 0.5, 8, 10, 1), InputError);
  CHECK_THROWS_AS(lp_length_sampled(id, 2, 1, 10, 1), InputError);
  CHECK_THROWS_AS(lp_length_sampled(id, 2, 8, 0, 1), InputError);
}
