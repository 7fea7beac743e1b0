#pragma once

#include "qmdisc/gg_estimator.hpp"
#include "qmdisc/lp_metric.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qmdisc {

/// Outcome of one verification: pass/fail plus every intermediate quantity.
struct Report {
  std::string name;
  bool passed = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

/// For sampled configurations x: 2 sum_{i<j} (L_ij(x) + 4) >= length of the
/// extracted braid after free reduction. Configuration i comes from the
/// stream keyed by (seed, i).
Report check_crossing_bound(const FlowSpec& flow, int n, const std::vector<Point>& base,
                            int trials, std::uint64_t seed, const EstimatorOptions& options = {});

/// max |phi| over the generators sigma_i^{+-1} of B_n. When phi is undefined
/// on some of them (a quasi-morphism on P_n only), the pure generators
/// A_ij^{+-1} are included as well.
double generator_bound(const QuasimorphismSpec& phi, int n);

/// |phi(w)| <= (D + generator_value) * representative_length(w) on every
/// word. D is the declared defect bound, else a sampled lower estimate.
Report check_word_length_bound(const QuasimorphismSpec& phi, double generator_value,
                               const std::vector<BraidWord>& words, std::uint64_t seed = 0);

struct LipschitzOptions {
  std::vector<long> k_schedule{2, 4};
  double r_squared_min = 0.99;
  double sigmas = 3;
};

/// Along a family of single-term radial flows: pairs (L_p, |Phi~_n|), the
/// ratio |Phi~_n| / L_p constant within `sigmas` standard errors, a linear
/// fit of |Phi~_n| against L_p with R^2 >= r_squared_min, and
/// |Phi~_n| <= A L_p + B for the line through the first two members.
Report check_lipschitz(const std::vector<FlowSpec>& family, const QuasimorphismSpec& phi, int n,
                       double p, long samples, std::uint64_t seed,
                       const LipschitzOptions& lipschitz = {},
                       const EstimatorOptions& options = {});

/// For Psi(v) = time-one flow of sum v_i h_i: L_p(Psi(v)) <= c2 |v|_1 with
/// c2 = max_i L_p(h_i), and c1 |v|_1 <= |sum v_i m_i| with m_i = int y h_i
/// and c1 = min_i |m_i|. The lower side uses the exact signature moments as
/// a proxy for the word norm. For p = 2 both sides are compared exactly.
Report check_bilipschitz_disc(const std::vector<RadialProfile>& profiles,
                              const std::vector<std::vector<Rational>>& vectors, double p = 2);

/// Exact determinant of M_ji = int y^j h_i, j = 1..n: row j holds the
/// degree-(j+2) signature moments.
Report check_signature_matrix(const std::vector<RadialProfile>& profiles);

/// Zero-mean profile: a positive bump near the centre and a negative one
/// near the rim with the same integral.
RadialProfile balanced_profile();

/// Three bumps with distinct supports.
std::vector<RadialProfile> default_signature_profiles();

/// Exact checks of the h_s family on the given s values, plus
/// M1 = min |int y h_s| and M2 = max L_p(h_s).
Report check_hs_family(const std::vector<Rational>& s_values, double p = 2);

/// n evenly spaced values from 1/4 to 1/3.
std::vector<Rational> hs_grid(int count);

/// Exact sign of h on the open interval (a, b): +1, -1, or 0 when h
/// vanishes somewhere in it.
int profile_sign_on(const RadialProfile& h, const Rational& a, const Rational& b);
/// Exact test of h >= 0 on [a, b].
bool profile_nonnegative_on(const RadialProfile& h, const Rational& a, const Rational& b);

}  // namespace qmdisc
