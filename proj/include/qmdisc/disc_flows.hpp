#pragma once

#include "qmdisc/exact.hpp"
#include "qmdisc/polynomial.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace qmdisc {

struct Point {
  double x = 0;
  double y = 0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double c, Point a) { return {c * a.x, c * a.y}; }
  double norm2() const { return x * x + y * y; }
  friend bool operator==(const Point&, const Point&) = default;
};

/// One polynomial piece of a radial profile, valid on [from, to].
struct ProfilePiece {
  Rational from;
  Rational to;
  Polynomial poly;
};

/// Piecewise-polynomial h: [0,1] -> R with exact rational data. The
/// Hamiltonian on the disc is H(x) = h(|x|^2). h is zero outside the pieces.
class RadialProfile {
 public:
  /// The zero profile.
  RadialProfile() = default;

  /// Validates ordering, containment in [0,1], and C^smoothness agreement at
  /// every breakpoint strictly inside (0,1), counting the zero function
  /// outside the pieces. Throws InputError on violation.
  RadialProfile(std::vector<ProfilePiece> pieces, int smoothness);

  const std::vector<ProfilePiece>& pieces() const noexcept { return pieces_; }
  int smoothness() const noexcept { return smoothness_; }
  bool is_zero() const noexcept { return pieces_.empty(); }

  /// Smallest closed interval outside which h vanishes; nullopt for h = 0.
  std::optional<std::pair<Rational, Rational>> support() const;

  Rational value(const Rational& y) const;
  Rational derivative(const Rational& y) const;
  double value(double y) const;
  double derivative(double y) const;

  /// Exact integral of y^k h(y) over [0,1].
  Rational moment(int k) const;

  /// Integral of y^(p/2) |h'(y)|^p over [0,1] by adaptive quadrature split at
  /// breakpoints and at the sign changes of h'.
  double lp_integral(double p) const;
  /// Same integral, exactly, for even integer p.
  Rational lp_integral_exact(int even_p) const;

 private:
  const ProfilePiece* piece_at(const Rational& y) const;
  int piece_index(double y) const;

  std::vector<ProfilePiece> pieces_;
  int smoothness_ = 1;
  std::vector<double> breaks_;  // double copies of piece endpoints
  std::vector<FastPolynomial> fast_value_;
  std::vector<FastPolynomial> fast_derivative_;
};

/// sum_i c_i h_i, merged onto the common refinement of all breakpoints.
RadialProfile linear_combination(const std::vector<std::pair<Rational, RadialProfile>>& terms);

/// The profile h(y) = c * y on [0,1]; with c = 1/2 its flow is rigid rotation
/// at unit angular speed. Not compactly supported in (0,1).
RadialProfile linear_profile(const Rational& slope);

/// C^1 bump (y-a)^2 (b-y)^2 * scale on [a,b].
RadialProfile bump_profile(const Rational& a, const Rational& b, const Rational& scale = 1);

struct FlowTerm {
  RadialProfile profile;
  double time = 0;
};

/// Composition of the commuting radial flows of the terms.
class FlowSpec {
 public:
  FlowSpec() = default;

  /// Requires every profile's support strictly inside (0,1), so the flow is
  /// the identity near the centre and the boundary circle.
  static FlowSpec checked(std::vector<FlowTerm> terms);
  /// No support check; for analytic test flows such as rigid rotation.
  static FlowSpec unchecked(std::vector<FlowTerm> terms);
  static FlowSpec identity() { return FlowSpec(); }

  const std::vector<FlowTerm>& terms() const noexcept { return terms_; }
  bool boundary_checked() const noexcept { return checked_; }

  /// Every time coefficient multiplied by c (the flow at time c).
  FlowSpec scaled(double c) const;

  /// Total angle increment 2 sum_i t_i h_i'(r^2) at squared radius r2.
  double angle_increment(double r2) const;

 private:
  std::vector<FlowTerm> terms_;
  bool checked_ = false;
};

/// (r, theta) -> (r, theta + angle_increment(r^2)). Throws InputError for
/// points outside the closed unit disc.
Point radial_flow_apply(const FlowSpec& spec, Point p);
std::pair<double, double> radial_flow_apply_polar(const FlowSpec& spec, double r, double theta);

/// Calabi invariant 2 pi sum_i t_i int_0^1 h_i.
double calabi(const FlowSpec& spec);

/// int_0^1 y^(n-2) h(y) dy, exactly. Throws InputError for n < 3.
Rational signature_moment(const RadialProfile& profile, int n);

/// Analytic L^p length of a single-term radial flow over t in [0,1]:
/// |t| 2 pi^(1/p) (int_0^1 y^(p/2) |h'|^p dy)^(1/p). Throws InputError for
/// multi-term specs or p < 1.
double lp_length_radial(const FlowSpec& spec, double p);

/// The h_s family for s in [1/4, 1/3]: odd about y = 1/2, equal to 1/2 - y
/// on the common core [3/8, 5/8], with cubic Hermite lobes reaching zero
/// with zero slope at 1/2 -/+ s. Throws InputError for s outside the range.
RadialProfile make_hs_profile(const Rational& s);

/// Implicit-midpoint integration of the Hamiltonian field of h(|x|^2) for
/// time t with (at most) the given step. Test oracle for radial_flow_apply.
Point integrate_flow_numeric(const RadialProfile& profile, double t, Point p, double step);

/// Determinant of the central-difference Jacobian of `map` at `p`.
double numeric_jacobian_determinant(const std::function<Point(Point)>& map, Point p,
                                    double h = 1e-5);

}  // namespace qmdisc
