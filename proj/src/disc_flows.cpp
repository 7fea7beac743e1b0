#include "qmdisc/disc_flows.hpp"

#include "qmdisc/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace qmdisc {

namespace {

// Derivatives of order 0..order of p at y.
std::vector<Rational> jet(const Polynomial& p, const Rational& y, int order) {
  std::vector<Rational> out;
  Polynomial d = p;
  for (int k = 0; k <= order; ++k) {
    out.push_back(d(y));
    d = d.derivative();
  }
  return out;
}

}  // namespace

RadialProfile::RadialProfile(std::vector<ProfilePiece> pieces, int smoothness)
    : smoothness_(smoothness) {
  if (smoothness < 0) throw InputError("smoothness class must be >= 0");
  for (auto& piece : pieces) {
    if (!(piece.from < piece.to)) throw InputError("profile piece with empty interval");
    if (piece.from < 0 || piece.to > 1) throw InputError("profile piece outside [0,1]");
    if (!piece.poly.is_zero()) pieces_.push_back(std::move(piece));
  }
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    if (pieces_[k].from < pieces_[k - 1].to) throw InputError("profile pieces overlap or are unordered");
  }
  // Compare jets from both sides at every interior breakpoint; a missing
  // neighbour is the zero function.
  const Polynomial zero;
  std::set<Rational> endpoints;
  for (const auto& piece : pieces_) {
    endpoints.insert(piece.from);
    endpoints.insert(piece.to);
  }
  for (const Rational& y : endpoints) {
    if (y <= 0 || y >= 1) continue;
    const Polynomial* left = &zero;
    const Polynomial* right = &zero;
    for (const auto& piece : pieces_) {
      if (piece.to == y) left = &piece.poly;
      if (piece.from == y) right = &piece.poly;
    }
    if (jet(*left, y, smoothness_) != jet(*right, y, smoothness_)) {
      throw InputError("profile is not C^" + std::to_string(smoothness_) + " at y = " +
                       to_string(y));
    }
  }
  for (const auto& piece : pieces_) {
    breaks_.push_back(to_double(piece.from));
    breaks_.push_back(to_double(piece.to));
    fast_value_.emplace_back(piece.poly);
    fast_derivative_.emplace_back(piece.poly.derivative());
  }
}

std::optional<std::pair<Rational, Rational>> RadialProfile::support() const {
  if (pieces_.empty()) return std::nullopt;
  return std::make_pair(pieces_.front().from, pieces_.back().to);
}

const ProfilePiece* RadialProfile::piece_at(const Rational& y) const {
  for (const auto& piece : pieces_) {
    if (piece.from <= y && y <= piece.to) return &piece;
  }
  return nullptr;
}

int RadialProfile::piece_index(double y) const {
  // breaks_ holds [from_0, to_0, from_1, to_1, ...] in increasing order.
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), y);
  const auto pos = it - breaks_.begin();
  if (pos == 0) return -1;
  if (pos % 2 == 1) return static_cast<int>(pos / 2);  // inside [from_k, to_k)
  // y >= to_k: only on the piece when exactly at its right end.
  const int k = static_cast<int>(pos / 2) - 1;
  return y == breaks_[2 * k + 1] ? k : -1;
}

Rational RadialProfile::value(const Rational& y) const {
  const ProfilePiece* piece = piece_at(y);
  return piece ? piece->poly(y) : Rational(0);
}

Rational RadialProfile::derivative(const Rational& y) const {
  const ProfilePiece* piece = piece_at(y);
  return piece ? piece->poly.derivative()(y) : Rational(0);
}

double RadialProfile::value(double y) const {
  const int k = piece_index(y);
  return k < 0 ? 0.0 : fast_value_[k](y);
}

double RadialProfile::derivative(double y) const {
  const int k = piece_index(y);
  return k < 0 ? 0.0 : fast_derivative_[k](y);
}

Rational RadialProfile::moment(int k) const {
  Rational total = 0;
  for (const auto& piece : pieces_) {
    total += (Polynomial::monomial(1, k) * piece.poly).integrate(piece.from, piece.to);
  }
  return total;
}

double RadialProfile::lp_integral(double p) const {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double a = breaks_[2 * k];
    const double b = breaks_[2 * k + 1];
    const FastPolynomial& d = fast_derivative_[k];
    // Split where h' changes sign so each integrand is smooth inside.
    std::vector<double> cuts{a};
    constexpr int kGrid = 256;
    double prev_y = a;
    double prev_v = d(a);
    for (int g = 1; g <= kGrid; ++g) {
      const double y = a + (b - a) * g / kGrid;
      const double v = d(y);
      if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
        double lo = prev_y;
        double hi = y;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((d(mid) < 0) == (prev_v < 0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        cuts.push_back(0.5 * (lo + hi));
      }
      prev_y = y;
      prev_v = v;
    }
    cuts.push_back(b);
    // y = u^2 turns y^(p/2) dy into u^p 2u du, smooth at y = 0.
    const auto integrand = [&d, p](double u) {
      const double y = u * u;
      return 2 * std::pow(u, p + 1) * std::pow(std::abs(d(y)), p);
    };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (cuts[c + 1] <= cuts[c]) continue;
      total += Quadrature::integrate(integrand, std::sqrt(cuts[c]), std::sqrt(cuts[c + 1]), 15,
                                     1e-12);
    }
  }
  return total;
}

Rational RadialProfile::lp_integral_exact(int even_p) const {
  if (even_p < 2 || even_p % 2 != 0) throw InputError("exact L^p integral needs even p >= 2");
  Rational total = 0;
  for (const auto& piece : pieces_) {
    const Polynomial d = piece.poly.derivative();
    Polynomial integrand = Polynomial::monomial(1, even_p / 2);
    for (int k = 0; k < even_p; ++k) integrand = integrand * d;
    total += integrand.integrate(piece.from, piece.to);
  }
  return total;
}

RadialProfile linear_combination(const std::vector<std::pair<Rational, RadialProfile>>& terms) {
  std::set<Rational> cuts;
  int smoothness = 1 << 20;
  for (const auto& [c, profile] : terms) {
    smoothness = std::min(smoothness, profile.smoothness());
    for (const auto& piece : profile.pieces()) {
      cuts.insert(piece.from);
      cuts.insert(piece.to);
    }
  }
  if (terms.empty()) return RadialProfile();
  const std::vector<Rational> grid(cuts.begin(), cuts.end());
  std::vector<ProfilePiece> pieces;
  for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
    const Rational mid = (grid[g] + grid[g + 1]) / 2;
    Polynomial sum;
    for (const auto& [c, profile] : terms) {
      for (const auto& piece : profile.pieces()) {
        if (piece.from <= mid && mid <= piece.to) sum = sum + c * piece.poly;
      }
    }
    if (!sum.is_zero()) pieces.push_back({grid[g], grid[g + 1], sum});
  }
  return RadialProfile(std::move(pieces), smoothness);
}

RadialProfile linear_profile(const Rational& slope) {
  return RadialProfile({{Rational(0), Rational(1), Polynomial({Rational(0), slope})}}, 1);
}

RadialProfile bump_profile(const Rational& a, const Rational& b, const Rational& scale) {
  if (!(0 <= a && a < b && b <= 1)) throw InputError("bump needs 0 <= a < b <= 1");
  const Polynomial left({-a, Rational(1)});   // y - a
  const Polynomial right({b, Rational(-1)});  // b - y
  return RadialProfile({{a, b, scale * (left * left * right * right)}}, 1);
}

FlowSpec FlowSpec::checked(std::vector<FlowTerm> terms) {
  for (const auto& term : terms) {
    const auto support = term.profile.support();
    if (support && (support->first <= 0 || support->second >= 1)) {
      throw InputError("flow profile support must lie strictly inside (0,1)");
    }
  }
  FlowSpec spec;
  spec.terms_ = std::move(terms);
  spec.checked_ = true;
  return spec;
}

FlowSpec FlowSpec::unchecked(std::vector<FlowTerm> terms) {
  FlowSpec spec;
  spec.terms_ = std::move(terms);
  return spec;
}

FlowSpec FlowSpec::scaled(double c) const {
  FlowSpec out = *this;
  for (auto& term : out.terms_) term.time *= c;
  return out;
}

double FlowSpec::angle_increment(double r2) const {
  double total = 0;
  for (const auto& term : terms_) total += 2 * term.time * term.profile.derivative(r2);
  return total;
}

Point radial_flow_apply(const FlowSpec& spec, Point p) {
  const double r2 = p.norm2();
  if (r2 > 1 + 1e-12) throw InputError("point outside the closed unit disc");
  const double angle = spec.angle_increment(r2);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

std::pair<double, double> radial_flow_apply_polar(const FlowSpec& spec, double r, double theta) {
  if (r < 0 || r > 1 + 1e-12) throw InputError("radius outside [0,1]");
  return {r, theta + spec.angle_increment(r * r)};
}

double calabi(const FlowSpec& spec) {
  double total = 0;
  for (const auto& term : spec.terms()) {
    total += 2 * term.time * std::numbers::pi * to_double(term.profile.moment(0));
  }
  return total;
}

Rational signature_moment(const RadialProfile& profile, int n) {
  if (n < 3) throw InputError("signature moments are defined for n >= 3");
  return profile.moment(n - 2);
}

double lp_length_radial(const FlowSpec& spec, double p) {
  if (p < 1) throw InputError("L^p length needs p >= 1");
  if (spec.terms().empty()) return 0.0;
  if (spec.terms().size() > 1) {
    throw InputError("analytic L^p length needs a single-term flow; use lp_length_sampled");
  }
  const FlowTerm& term = spec.terms().front();
  const double integral = term.profile.lp_integral(p);
  return std::abs(term.time) * 2 * std::pow(std::numbers::pi, 1 / p) * std::pow(integral, 1 / p);
}

RadialProfile make_hs_profile(const Rational& s) {
  if (s < make_rational(1, 4) || s > make_rational(1, 3)) {
    throw InputError("h_s is defined for s in [1/4, 1/3]");
  }
  const Rational half = make_rational(1, 2);
  const Rational eighth = make_rational(1, 8);
  // Right lobe in u = y - 1/2 on [1/8, s]: q(u) = w^2 (A + B w), w = u - s,
  // with q(1/8) = -1/8 and q'(1/8) = -1 (matching the core 1/2 - y) and a
  // double root at u = s.
  const Rational d = s - eighth;
  const Rational B = -(1 + 1 / (4 * d)) / (d * d);
  const Rational A = -1 / d - 3 / (8 * d * d);
  const Polynomial w_sq = Polynomial({-s, Rational(1)}) * Polynomial({-s, Rational(1)});
  const Polynomial q_of_u = w_sq * Polynomial({A - B * s, B});  // A + B (u - s)
  const Polynomial right = q_of_u.compose_linear(1, -half);                  // q(y - 1/2)
  const Polynomial left = Rational(-1) * q_of_u.compose_linear(-1, half);    // -q(1/2 - y)
  const Polynomial core({half, Rational(-1)});
  return RadialProfile({{half - s, half - eighth, left},
                        {half - eighth, half + eighth, core},
                        {half + eighth, half + s, right}},
                       1);
}

Point integrate_flow_numeric(const RadialProfile& profile, double t, Point p, double step) {
  if (!(step > 0)) throw InputError("integration step must be positive");
  const auto field = [&profile](Point x) {
    const double w = 2 * profile.derivative(x.norm2());
    return Point{-w * x.y, w * x.x};
  };
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(std::abs(t) / step)));
  const double dt = t / static_cast<double>(steps);
  Point x = p;
  for (long k = 0; k < steps; ++k) {
    Point next = x + dt * field(x);
    for (int it = 0; it < 100; ++it) {
      const Point candidate = x + dt * field(0.5 * (x + next));
      const double change = (candidate - next).norm2();
      next = candidate;
      if (change < 1e-32) break;
    }
    x = next;
  }
  return x;
}

double numeric_jacobian_determinant(const std::function<Point(Point)>& map, Point p, double h) {
  const Point dx = (1 / (2 * h)) * (map({p.x + h, p.y}) - map({p.x - h, p.y}));
  const Point dy = (1 / (2 * h)) * (map({p.x, p.y + h}) - map({p.x, p.y - h}));
  return dx.x * dy.y - dx.y * dy.x;
}

}  // namespace qmdisc
