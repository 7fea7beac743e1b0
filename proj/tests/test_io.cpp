#include "qmdisc/errors.hpp"
#include "qmdisc/io.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qmdisc;
using namespace qmdisc::testing;

namespace {

bool same_profile(const RadialProfile& a, const RadialProfile& b) {
  if (a.pieces().size() != b.pieces().size() || a.smoothness() != b.smoothness()) return false;
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    const auto& p = a.pieces()[i];
    const auto& q = b.pieces()[i];
    if (p.from != q.from || p.to != q.to || !(p.poly == q.poly)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(rational_from_json(nlohmann::json::parse("[3, 4]")) == make_rational(3, 4));
  CHECK(rational_from_json(nlohmann::json::parse("-2")) == -2);
  CHECK(rational_from_json(nlohmann::json::parse("[\"123456789012345678901234567890\", 7]")) ==
        Rational(BigInt("123456789012345678901234567890"), BigInt(7)));
  CHECK_THROWS_AS(rational_from_json(nlohmann::json::parse("[1, 0]")), InputError);
  CHECK_THROWS_AS(rational_from_json(nlohmann::json::parse("0.5")), InputError);
  const Rational big(BigInt("-98765432109876543210987654321"), BigInt(3));
  CHECK(rational_from_json(rational_to_json(big)) == big);
}

TEST_CASE("profiles round-trip") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = random_profile(rng);
    CHECK(same_profile(profile_from_json(profile_to_json(h)), h));
    CHECK(same_profile(parse_profile(profile_to_json(h).dump()), h));
  }
  const auto hs = make_hs_profile(make_rational(2, 7));
  CHECK(same_profile(parse_profile(profile_to_json(hs).dump()), hs));
  CHECK(profile_from_json(profile_to_json(RadialProfile())).is_zero());
}

TEST_CASE("hand-written profile") {
  // y (1 - y) on [0, 1].
  const auto h = parse_profile(R"({"smoothness": 0, "breakpoints": [0, 1], "pieces": [[0, 1, -1]]})");
  CHECK(h.moment(1) == make_rational(1, 12));
  // A zero gap between two pieces.
  const auto g = parse_profile(R"({"smoothness": 0, "breakpoints": [[1,4], [1,2], [3,4], 1],
                                  "pieces": [[[-1,8], [3,4], -1], [], [[-3,4], [7,4], -1]]})");
  CHECK(g.pieces().size() == 2);
  CHECK(g.value(make_rational(5, 8)) == 0);
}

TEST_CASE("malformed profiles are input errors") {
  CHECK_THROWS_AS(parse_profile("not json"), InputError);
  CHECK_THROWS_AS(parse_profile("{}"), InputError);
  CHECK_THROWS_AS(parse_profile(R"({"breakpoints": [0, 1], "pieces": []})"), InputError);
  // Jump at 1/2 violates continuity.
  CHECK_THROWS_AS(parse_profile(R"({"smoothness": 0, "breakpoints": [0, [1,2], 1], "pieces": [[1], [2]]})"),
                  InputError);
  // Breakpoints out of order.
  CHECK_THROWS_AS(parse_profile(R"({"smoothness": 0, "breakpoints": [[1,2], 0], "pieces": [[0, 1]]})"),
                  InputError);
}

TEST_CASE("flows round-trip and respect the boundary flag") {
  const auto b = bump_profile(make_rational(1, 5), make_rational(4, 5), 3);
  const FlowSpec f = FlowSpec::checked({{b, 1.5}, {make_hs_profile(make_rational(1, 4)), -2.0}});
  const FlowSpec g = parse_flow(flow_to_json(f).dump());
  REQUIRE(g.terms().size() == 2);
  CHECK(g.terms()[1].time == -2.0);
  CHECK(g.boundary_checked());
  const Point p{0.3, 0.5};
  CHECK(radial_flow_apply(g, p) == radial_flow_apply(f, p));

  const std::string rot =
      R"({"terms": [{"profile": {"breakpoints": [0, 1], "pieces": [[0, [1,2]]]}, "time": 1}], "allow_boundary": true})";
  CHECK_FALSE(parse_flow(rot).boundary_checked());
  std::string strict = rot;
  strict.replace(strict.find("true"), 4, "false");
  CHECK_THROWS_AS(parse_flow(strict), InputError);
  CHECK_THROWS_AS(parse_flow(R"({"terms": [{"time": 1}]})"), InputError);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(read_file("/nonexistent/profile.json"), InputError); }
