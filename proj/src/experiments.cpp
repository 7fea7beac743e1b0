#include "qmdisc/experiments.hpp"

#include "qmdisc/errors.hpp"
#include "qmdisc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qmdisc {

using json = nlohmann::ordered_json;

json Report::to_json() const {
  json j;
  j["name"] = name;
  j["passed"] = passed;
  j["details"] = details;
  return j;
}

namespace {

json exact(const Rational& r) { return {{"exact", to_string(r)}, {"value", to_double(r)}}; }

// Non-finite doubles become null in JSON; keep them readable instead.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::vector<Point> draw_points(std::uint64_t seed, std::size_t index, int n) {
  SplitMix64 rng(derive_seed(seed, streams::kExperiments, index));
  std::vector<Point> x(n);
  for (auto& p : x) {
    const double r = std::sqrt(rng.uniform());
    const double a = 2 * std::numbers::pi * rng.uniform();
    p = {r * std::cos(a), r * std::sin(a)};
  }
  return x;
}

}  // namespace

Report check_crossing_bound(const FlowSpec& flow, int n, const std::vector<Point>& base,
                            int trials, std::uint64_t seed, const EstimatorOptions& options) {
  if (trials < 1) throw InputError("trials must be positive");
  if (n < 2) throw InputError("n must be at least 2");
  const auto z = base.empty() ? regular_polygon(n) : base;
  if (static_cast<int>(z.size()) != n) throw InputError("base must have n points");

  Report report{"crossing_bound"};
  double worst = std::numeric_limits<double>::infinity();
  double margin_sum = 0;
  long accepted = 0;
  long rejected = 0;
  std::size_t longest = 0;
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    const auto x = draw_points(seed, static_cast<std::size_t>(t), n);
    try {
      const auto bundle = gg_loop(z, x, flow, options.samples_per_segment, options.max_step_angle);
      const auto found = extract_braid_robust(bundle, options.direction, options.direction_attempts);
      double bound = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) bound += 2 * (winding_length(bundle, i, j) + 4);
      }
      const std::size_t length = representative_length(found.word);
      const double margin = bound - static_cast<double>(length);
      ok = ok && margin >= 0;
      worst = std::min(worst, margin);
      margin_sum += margin;
      longest = std::max(longest, length);
      ++accepted;
    } catch (const DegenerateConfiguration&) {
      ++rejected;
    } catch (const DomainError&) {
      ++rejected;
    }
  }
  report.passed = ok && accepted > 0;
  report.details["n"] = n;
  report.details["trials"] = trials;
  report.details["accepted"] = accepted;
  report.details["rejected"] = rejected;
  report.details["worst_margin"] = number(worst);
  report.details["mean_margin"] = accepted ? margin_sum / static_cast<double>(accepted) : 0.0;
  report.details["longest_word"] = longest;
  report.details["seed"] = seed;
  return report;
}

double generator_bound(const QuasimorphismSpec& phi, int n) {
  double best = 0;
  bool undefined = false;
  auto consider = [&](const BraidWord& w) {
    try {
      best = std::max(best, std::abs(to_double(phi.evaluate(w))));
    } catch (const DomainError&) {
      undefined = true;
    }
  };
  for (int i = 1; i < n; ++i) {
    for (int sign : {1, -1}) consider(BraidWord({sign * i}, n));
  }
  if (!undefined) return best;
  // Pure generators A_ij = s_{j-1}..s_{i+1} s_i^2 s_{i+1}^-1..s_{j-1}^-1.
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::vector<int> letters;
      for (int k = j - 1; k > i; --k) letters.push_back(k);
      letters.push_back(i);
      letters.push_back(i);
      for (int k = i + 1; k < j; ++k) letters.push_back(-k);
      const BraidWord a(letters, n);
      consider(a);
      consider(a.inverse());
    }
  }
  return best;
}

Report check_word_length_bound(const QuasimorphismSpec& phi, double generator_value,
                               const std::vector<BraidWord>& words, std::uint64_t seed) {
  Report report{"word_length_bound"};
  double defect = 0;
  std::string source = "declared";
  if (phi.defect_bound) {
    defect = to_double(*phi.defect_bound);
  } else if (!words.empty()) {
    source = "sampled lower estimate";
    const int n = words.front().strands();
    defect = to_double(sample_defect(phi, uniform_word_sampler(n, 0, 16), 400, seed));
  }
  const double coefficient = defect + generator_value;
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  json rows = json::array();
  for (const auto& w : words) {
    const double value = std::abs(to_double(phi.evaluate(w)));
    const double length = static_cast<double>(representative_length(w));
    const double margin = coefficient * length - value;
    ok = ok && margin >= 0;
    worst = std::min(worst, margin);
    rows.push_back({{"word", format_letters(w)}, {"abs_phi", value}, {"length", length},
                    {"margin", margin}});
  }
  report.passed = ok;
  report.details["phi"] = phi.name;
  report.details["defect"] = defect;
  report.details["defect_source"] = source;
  report.details["generator_value"] = generator_value;
  report.details["worst_margin"] = number(words.empty() ? 0.0 : worst);
  report.details["words"] = rows;
  return report;
}

Report check_lipschitz(const std::vector<FlowSpec>& family, const QuasimorphismSpec& phi, int n,
                       double p, long samples, std::uint64_t seed,
                       const LipschitzOptions& lipschitz, const EstimatorOptions& options) {
  if (family.size() < 3) throw InputError("the family needs at least three members");
  const std::size_t m = family.size();
  const auto estimates =
      estimate_phi_tilde_n_batch(family, phi, n, {}, samples, lipschitz.k_schedule, seed, options);
  std::vector<double> x(m), y(m), e(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = lp_length_radial(family[i], p);
    y[i] = std::abs(estimates[i].value);
    e[i] = estimates[i].std_error;
  }

  // Ratio |Phi| / L_p: inverse-variance mean and its spread.
  double weights = 0;
  double weighted = 0;
  bool ratio_defined = true;
  std::vector<double> ratio(m, 0.0), ratio_error(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] <= 0) {
      ratio_defined = ratio_defined && y[i] == 0;
      continue;
    }
    ratio[i] = y[i] / x[i];
    ratio_error[i] = e[i] / x[i];
    const double w = ratio_error[i] > 0 ? 1 / (ratio_error[i] * ratio_error[i]) : 1e300;
    weights += w;
    weighted += w * ratio[i];
  }
  const double mean_ratio = weights > 0 ? weighted / weights : 0.0;
  bool ratio_ok = ratio_defined;
  double worst_ratio_z = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] <= 0) continue;
    const double dev = std::abs(ratio[i] - mean_ratio);
    const double z = ratio_error[i] > 0 ? dev / ratio_error[i] : (dev > 0 ? INFINITY : 0.0);
    worst_ratio_z = std::max(worst_ratio_z, z);
    ratio_ok = ratio_ok && z <= lipschitz.sigmas;
  }

  // Least squares y = a x + b.
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ss_res += r * r;
  }
  const double r_squared = syy > 0 ? 1 - ss_res / syy : 1.0;

  // Line through the first two members, extrapolated.
  const double dx = x[1] - x[0];
  const double a = dx != 0 ? (y[1] - y[0]) / dx : 0.0;
  const double b = dx != 0 ? y[0] - a * x[0] : std::max(y[0], y[1]);
  bool affine_ok = true;
  json members = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    const double reach = dx != 0 ? std::abs(x[i] - x[0]) / std::abs(dx) : 0.0;
    const double tolerance = lipschitz.sigmas * (e[i] + e[0] + reach * (e[0] + e[1]));
    const bool within = i < 2 || y[i] <= a * x[i] + b + tolerance;
    affine_ok = affine_ok && within;
    members.push_back({{"lp_length_upper_bound", x[i]},
                       {"phi_tilde", estimates[i].value},
                       {"std_error", e[i]},
                       {"cauchy_error", estimates[i].cauchy_error},
                       {"rejected", estimates[i].rejected},
                       {"ratio", ratio[i]},
                       {"ratio_error", ratio_error[i]},
                       {"affine_bound_ok", within}});
  }

  Report report{"lipschitz"};
  report.passed = ratio_ok && r_squared >= lipschitz.r_squared_min && affine_ok;
  report.details["phi"] = phi.name;
  report.details["n"] = n;
  report.details["p"] = p;
  report.details["samples"] = samples;
  report.details["seed"] = seed;
  report.details["k_schedule"] = lipschitz.k_schedule;
  report.details["lipschitz_ratio"] = mean_ratio;
  report.details["ratio_constant"] = ratio_ok;
  report.details["worst_ratio_deviation_sigmas"] = number(worst_ratio_z);
  report.details["fit_slope"] = slope;
  report.details["fit_intercept"] = intercept;
  report.details["r_squared"] = r_squared;
  report.details["affine_A"] = a;
  report.details["affine_B"] = b;
  report.details["affine_ok"] = affine_ok;
  report.details["note"] = "L_p values are lengths of the given isotopies, upper bounds on the metric";
  report.details["members"] = members;
  return report;
}

Report check_bilipschitz_disc(const std::vector<RadialProfile>& profiles,
                              const std::vector<std::vector<Rational>>& vectors, double p) {
  if (profiles.empty()) throw InputError("need at least one profile");
  if (!(p >= 1)) throw InputError("p must be at least 1");
  const std::size_t n = profiles.size();
  const bool exact_upper = p == 2;

  Report report{"bilipschitz_disc"};
  std::vector<Rational> moments;
  std::vector<Rational> energies;  // int y |h'|^2 for p = 2
  std::vector<double> lengths;
  for (const auto& h : profiles) {
    moments.push_back(h.moment(1));
    const FlowSpec flow = FlowSpec::unchecked({{h, 1.0}});
    lengths.push_back(lp_length_radial(flow, p));
    if (exact_upper) energies.push_back(h.lp_integral_exact(2));
  }
  const int sign = moments.front() > 0 ? 1 : (moments.front() < 0 ? -1 : 0);
  bool same_sign = sign != 0;
  Rational c1 = abs(moments.front());
  for (const auto& m : moments) {
    same_sign = same_sign && (sign > 0 ? m > 0 : m < 0);
    c1 = std::min(c1, Rational(abs(m)));
  }
  const double c2 = *std::max_element(lengths.begin(), lengths.end());
  Rational max_energy = 0;
  for (const auto& en : energies) max_energy = std::max(max_energy, en);

  json hyp;
  hyp["moments_share_sign"] = same_sign;
  hyp["M1_prime"] = exact(c1);
  hyp["M2"] = c2;
  hyp["M1_positive"] = c1 > 0;
  hyp["M2_finite"] = std::isfinite(c2);
  report.details["hypotheses"] = hyp;
  json ms = json::array();
  for (const auto& m : moments) ms.push_back(exact(m));
  report.details["moments"] = ms;
  report.details["lengths"] = lengths;
  report.details["p"] = p;
  report.details["c1"] = exact(c1);
  report.details["c2"] = c2;
  report.details["c2_over_c1"] = number(c1 > 0 ? c2 / to_double(c1) : INFINITY);
  report.details["upper_side"] = exact_upper ? "exact rational comparison of squared lengths"
                                             : "quadrature";
  report.details["lower_side"] =
      "proxy |sum v_i m_i| from exact signature moments; the metric itself is an uncomputable "
      "infimum";
  if (!(same_sign && c1 > 0 && std::isfinite(c2))) {
    report.passed = false;
    report.details["failure"] = "hypotheses";
    return report;
  }

  bool ok = true;
  json rows = json::array();
  for (const auto& v : vectors) {
    if (v.size() != n) throw InputError("each vector needs one entry per profile");
    Rational norm1 = 0;
    Rational proxy = 0;
    std::vector<std::pair<Rational, RadialProfile>> terms;
    for (std::size_t i = 0; i < n; ++i) {
      norm1 += abs(v[i]);
      proxy += v[i] * moments[i];
      terms.emplace_back(v[i], profiles[i]);
    }
    if (norm1 == 0) throw InputError("vectors must be nonzero");
    proxy = abs(proxy);
    const RadialProfile combined = linear_combination(terms);
    const bool lower = c1 * norm1 <= proxy;
    bool upper;
    double length;
    if (exact_upper) {
      const Rational energy = combined.lp_integral_exact(2);
      upper = energy <= max_energy * norm1 * norm1;
      length = 2 * std::sqrt(std::numbers::pi * to_double(energy));
    } else {
      length = lp_length_radial(FlowSpec::unchecked({{combined, 1.0}}), p);
      upper = length <= c2 * to_double(norm1) * (1 + 1e-12);
    }
    ok = ok && lower && upper;
    rows.push_back({{"norm1", exact(norm1)},
                    {"proxy", exact(proxy)},
                    {"lp_length", length},
                    {"lower_ok", lower},
                    {"upper_ok", upper}});
  }
  report.passed = ok;
  report.details["vectors"] = rows;
  return report;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

Report check_signature_matrix(const std::vector<RadialProfile>& profiles) {
  if (profiles.empty()) throw InputError("need at least one profile");
  const std::size_t n = profiles.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  json rows = json::array();
  for (std::size_t j = 0; j < n; ++j) {
    json row = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      m[j][i] = signature_moment(profiles[i], static_cast<int>(j) + 3);
      row.push_back(to_string(m[j][i]));
    }
    rows.push_back(row);
  }
  const Rational det = determinant(m);
  Report report{"signature_matrix"};
  report.passed = det != 0;
  report.details["n"] = n;
  report.details["matrix"] = rows;
  report.details["determinant"] = exact(det);
  report.details["singular"] = det == 0;
  return report;
}

RadialProfile balanced_profile() {
  return linear_combination({{Rational(1), bump_profile(make_rational(1, 10), make_rational(9, 20), 400)},
                             {Rational(-1), bump_profile(make_rational(11, 20), make_rational(9, 10), 400)}});
}

std::vector<RadialProfile> default_signature_profiles() {
  return {bump_profile(make_rational(1, 10), make_rational(2, 5), 100),
          bump_profile(make_rational(3, 10), make_rational(3, 5), 100),
          bump_profile(make_rational(1, 2), make_rational(9, 10), 100)};
}

int profile_sign_on(const RadialProfile& h, const Rational& a, const Rational& b) {
  if (!(a < b)) throw InputError("profile_sign_on needs a < b");
  int sign = 0;
  Rational covered = a;
  for (const auto& piece : h.pieces()) {
    const Rational lo = std::max(a, piece.from);
    const Rational hi = std::min(b, piece.to);
    if (!(lo < hi)) continue;
    if (lo != covered) return 0;  // h vanishes on a gap
    if (lo != a && h.value(lo) == 0) return 0;
    const int s = sign_on(piece.poly, lo, hi);
    if (s == 0 || (sign != 0 && s != sign)) return 0;
    sign = s;
    covered = hi;
  }
  return covered == b ? sign : 0;
}

bool profile_nonnegative_on(const RadialProfile& h, const Rational& a, const Rational& b) {
  for (const auto& piece : h.pieces()) {
    const Rational lo = std::max(a, piece.from);
    const Rational hi = std::min(b, piece.to);
    if (lo <= hi && !nonnegative_on(piece.poly, lo, hi)) return false;
  }
  return true;
}

std::vector<Rational> hs_grid(int count) {
  if (count < 2) throw InputError("need at least two values of s");
  std::vector<Rational> s;
  for (int k = 0; k < count; ++k) s.push_back(make_rational(1, 4) + make_rational(k, 12L * (count - 1)));
  return s;
}

Report check_hs_family(const std::vector<Rational>& s_values, double p) {
  if (s_values.empty()) throw InputError("need at least one value of s");
  const Rational half = make_rational(1, 2);
  const Rational core_lo = make_rational(3, 8);
  const Rational core_hi = make_rational(5, 8);
  const Polynomial core({half, Rational(-1)});

  std::vector<Rational> sorted = s_values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  Report report{"hs_family"};
  bool all = true;
  json rows = json::array();
  std::vector<RadialProfile> family;
  Rational m1 = -1;
  double m2 = 0;
  std::vector<Rational> moment_curve;
  for (const auto& s : sorted) {
    const RadialProfile h = make_hs_profile(s);
    const auto support = h.support();
    const bool support_ok = support && support->first == half - s && support->second == half + s;
    const bool sign_ok = profile_sign_on(h, half - s, half) == 1 && profile_sign_on(h, half, half + s) == -1;
    bool core_ok = true;
    Rational covered = core_lo;
    for (const auto& piece : h.pieces()) {
      const Rational lo = std::max(core_lo, piece.from);
      const Rational hi = std::min(core_hi, piece.to);
      if (!(lo < hi)) continue;
      core_ok = core_ok && lo == covered && piece.poly == core;
      covered = hi;
    }
    core_ok = core_ok && covered == core_hi;
    const Rational integral = h.moment(0);
    const Rational first = h.moment(1);
    const double length = p == 2 ? 2 * std::sqrt(std::numbers::pi * to_double(h.lp_integral_exact(2)))
                                 : lp_length_radial(FlowSpec::unchecked({{h, 1.0}}), p);
    const bool ok = support_ok && sign_ok && core_ok && integral == 0 && first < 0;
    all = all && ok;
    m1 = m1 < 0 ? abs(first) : std::min(m1, Rational(abs(first)));
    m2 = std::max(m2, length);
    moment_curve.push_back(first);
    rows.push_back({{"s", to_string(s)},
                    {"support_ok", support_ok},
                    {"sign_pattern_ok", sign_ok},
                    {"core_ok", core_ok},
                    {"integral_zero", integral == 0},
                    {"first_moment", exact(first)},
                    {"first_moment_negative", first < 0},
                    {"lp_length", length}});
    family.push_back(h);
  }

  // |h_s| grows with s: h_s' - h_s >= 0 left of 1/2 and <= 0 right of it.
  bool monotone = true;
  for (std::size_t k = 1; k < family.size(); ++k) {
    const RadialProfile diff =
        linear_combination({{Rational(1), family[k]}, {Rational(-1), family[k - 1]}});
    const RadialProfile neg = linear_combination({{Rational(-1), diff}});
    monotone = monotone && profile_nonnegative_on(diff, 0, half) && profile_nonnegative_on(neg, half, 1);
  }
  bool curve_monotone = true;
  for (std::size_t k = 1; k < moment_curve.size(); ++k) {
    curve_monotone = curve_monotone && moment_curve[k] <= moment_curve[k - 1];
  }

  report.passed = all && monotone && m1 > 0 && std::isfinite(m2);
  report.details["count"] = sorted.size();
  report.details["p"] = p;
  report.details["monotone_in_s"] = monotone;
  report.details["first_moment_decreasing_in_s"] = curve_monotone;
  report.details["M1"] = exact(m1);
  report.details["M1_note"] = "min over s of |int y h_s|; the estimator scale K_3 is not applied";
  report.details["M2"] = m2;
  report.details["values"] = rows;
  return report;
}

}  // namespace qmdisc
