#include "qmdisc/io.hpp"

#include "qmdisc/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace qmdisc {

using nlohmann::json;

namespace {

json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("expected an integer, got " + j.dump());
}

}  // namespace

json rational_to_json(const Rational& q) {
  return json::array({big_to_json(numerator(q)), big_to_json(denominator(q))});
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return Rational(big_from_json(j));
  if (j.is_array() && j.size() == 2) {
    const BigInt den = big_from_json(j[1]);
    if (den == 0) throw InputError("zero denominator in " + j.dump());
    return Rational(big_from_json(j[0]), den);
  }
  throw InputError("expected a rational [numerator, denominator], got " + j.dump());
}

json profile_to_json(const RadialProfile& h) {
  json breakpoints = json::array();
  json pieces = json::array();
  for (const auto& piece : h.pieces()) {
    if (breakpoints.empty() || rational_from_json(breakpoints.back()) != piece.from) {
      if (!breakpoints.empty()) pieces.push_back(json::array());  // zero gap
      breakpoints.push_back(rational_to_json(piece.from));
    }
    json coefficients = json::array();
    for (const auto& c : piece.poly.coefficients()) coefficients.push_back(rational_to_json(c));
    pieces.push_back(coefficients);
    breakpoints.push_back(rational_to_json(piece.to));
  }
  return {{"smoothness", h.smoothness()}, {"breakpoints", breakpoints}, {"pieces", pieces}};
}

RadialProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw InputError("profile must be a JSON object");
  const int smoothness = j.value("smoothness", 1);
  const auto& b = j.at("breakpoints");
  const auto& p = j.at("pieces");
  if (!b.is_array() || !p.is_array()) throw InputError("breakpoints and pieces must be arrays");
  if (p.empty() && b.empty()) return RadialProfile();
  if (b.size() != p.size() + 1) throw InputError("need one more breakpoint than pieces");
  std::vector<ProfilePiece> pieces;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<Rational> coefficients;
    for (const auto& c : p[i]) coefficients.push_back(rational_from_json(c));
    Polynomial poly(std::move(coefficients));
    if (poly.is_zero()) continue;
    pieces.push_back({rational_from_json(b[i]), rational_from_json(b[i + 1]), std::move(poly)});
  }
  return RadialProfile(std::move(pieces), smoothness);
}

json flow_to_json(const FlowSpec& flow) {
  json terms = json::array();
  for (const auto& t : flow.terms()) terms.push_back({{"profile", profile_to_json(t.profile)}, {"time", t.time}});
  return {{"terms", terms}, {"allow_boundary", !flow.boundary_checked()}};
}

FlowSpec flow_from_json(const json& j) {
  if (!j.is_object()) throw InputError("flow must be a JSON object");
  std::vector<FlowTerm> terms;
  for (const auto& t : j.at("terms")) {
    const double time = t.at("time").get<double>();
    if (!std::isfinite(time)) throw InputError("flow times must be finite");
    terms.push_back({profile_from_json(t.at("profile")), time});
  }
  return j.value("allow_boundary", false) ? FlowSpec::unchecked(std::move(terms))
                                          : FlowSpec::checked(std::move(terms));
}

namespace {

template <class F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

RadialProfile parse_profile(const std::string& text) {
  return guarded([&] { return profile_from_json(json::parse(text)); });
}

FlowSpec parse_flow(const std::string& text) {
  return guarded([&] { return flow_from_json(json::parse(text)); });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace qmdisc
