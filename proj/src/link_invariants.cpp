#include "qmdisc/link_invariants.hpp"

#include "inertia.hpp"
#include "qmdisc/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace qmdisc {

SeifertMatrix::SeifertMatrix(int size, std::vector<Entry> entries)
    : size_(size), entries_(std::move(entries)) {}

long SeifertMatrix::at(int row, int col) const {
  long v = 0;
  for (const auto& e : entries_) {
    if (e.row == row && e.col == col) v += e.value;
  }
  return v;
}

std::vector<std::vector<long>> SeifertMatrix::dense() const {
  std::vector<std::vector<long>> out(size_, std::vector<long>(size_, 0));
  for (const auto& e : entries_) out[e.row][e.col] += e.value;
  return out;
}

namespace {

struct Generator {
  int column;  // 1-based generator index i of sigma_i
  std::size_t first;
  std::size_t second;
  int first_sign;
  int second_sign;
};

std::vector<Generator> homology_generators(const BraidWord& a) {
  std::vector<std::vector<std::pair<std::size_t, int>>> bands(a.strands());
  const auto letters = a.letters();
  for (std::size_t pos = 0; pos < letters.size(); ++pos) {
    bands[std::abs(letters[pos])].emplace_back(pos, letters[pos] > 0 ? 1 : -1);
  }
  std::vector<Generator> gens;
  for (int col = 1; col < a.strands(); ++col) {
    const auto& b = bands[col];
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      gens.push_back({col, b[k].first, b[k + 1].first, b[k].second, b[k + 1].second});
    }
  }
  std::sort(gens.begin(), gens.end(),
            [](const Generator& x, const Generator& y) { return x.first < y.first; });
  return gens;
}

}  // namespace

SeifertMatrix seifert_matrix(const BraidWord& a) {
  const auto gens = homology_generators(a);
  const int m = static_cast<int>(gens.size());
  std::vector<SeifertMatrix::Entry> entries;
  for (int x = 0; x < m; ++x) {
    const Generator& g = gens[x];
    if (g.first_sign == g.second_sign) entries.push_back({x, x, -g.first_sign});
    // Generators are sorted by first band, so only later ones can start
    // inside g's interval (or at its second band); later ones are disjoint.
    for (int y = x + 1; y < m && gens[y].first <= g.second; ++y) {
      const Generator& h = gens[y];
      if (h.column == g.column) {
        // h starts at g's second band (consecutive in the column).
        if (g.second_sign > 0) {
          entries.push_back({x, y, 1});
        } else {
          entries.push_back({y, x, -1});
        }
      } else if (std::abs(h.column - g.column) == 1 && h.second > g.second) {
        // Interleaved: g.first < h.first < g.second < h.second. The entry
        // sits in the row of the lower column.
        if (g.column < h.column) {
          entries.push_back({x, y, -1});
        } else {
          entries.push_back({y, x, 1});
        }
      }
    }
  }
  return SeifertMatrix(m, std::move(entries));
}

int seifert_surface_components(const BraidWord& a) {
  std::vector<bool> used(a.strands(), false);
  for (int l : a.letters()) used[std::abs(l)] = true;
  int components = a.strands();
  for (int col = 1; col < a.strands(); ++col) {
    if (used[col]) --components;
  }
  return components;
}

int matrix_signature(const std::vector<std::vector<long>>& symmetric) {
  const int n = static_cast<int>(symmetric.size());
  std::vector<detail::Triplet> triplets;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(symmetric[i].size()) != n) throw InputError("matrix is not square");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (symmetric[i][j] != symmetric[j][i]) throw InputError("matrix is not symmetric");
      if (symmetric[i][j] != 0) triplets.push_back({i, j, symmetric[i][j]});
    }
  }
  return detail::signature_of_triplets(n, triplets);
}

int matrix_signature(const std::vector<std::vector<Rational>>& symmetric) {
  const int n = static_cast<int>(symmetric.size());
  detail::SparseSymmetric<Rational> m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(symmetric[i].size()) != n) throw InputError("matrix is not square");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (symmetric[i][j] != symmetric[j][i]) throw InputError("matrix is not symmetric");
      m.add(i, j, symmetric[i][j]);
    }
  }
  const auto [p, q] = m.inertia();
  return p - q;
}

int braid_signature(const BraidWord& a) {
  const SeifertMatrix v = seifert_matrix(a);
  // V + V^T: each off-diagonal entry contributes to both (i,j) and (j,i),
  // each diagonal entry twice.
  std::vector<detail::Triplet> triplets;
  triplets.reserve(v.entries().size());
  for (const auto& e : v.entries()) {
    triplets.push_back({e.row, e.col, e.row == e.col ? 2 * e.value : e.value});
  }
  return detail::signature_of_triplets(v.size(), triplets);
}

QuasimorphismSpec total_linking_qm() {
  return {"lk",
          [](const BraidWord& w) {
            long total = 0;
            for (int i = 1; i <= w.strands(); ++i) {
              for (int j = i + 1; j <= w.strands(); ++j) total += linking_number(w, i, j);
            }
            return Rational(total);
          },
          Rational(0)};
}

QuasimorphismSpec pair_linking_qm(int i, int j) {
  return {"lk(" + std::to_string(i) + "," + std::to_string(j) + ")",
          [i, j](const BraidWord& w) { return Rational(linking_number(w, i, j)); },
          Rational(0)};
}

QuasimorphismSpec signature_qm() {
  return {"signature", [](const BraidWord& w) { return Rational(braid_signature(w)); },
          std::nullopt};
}

HomogenizedValue homogenize(const QuasimorphismSpec& phi, const BraidWord& a,
                            const HomogenizeOptions& options) {
  if (options.k_max < 2) throw InputError("homogenize needs k_max >= 2");
  const Rational f1 = phi.evaluate(free_reduce(a));
  if (phi.defect_bound && *phi.defect_bound == 0) return {f1, Rational(0), 1};

  const auto eval_power = [&](long k) -> std::optional<Rational> {
    const BraidWord w = free_reduce(power(a, k));
    if (w.size() > options.length_cap) return std::nullopt;
    return phi.evaluate(w);
  };

  Rational f_k = f1;
  long k = 1;
  std::optional<Rational> previous_quotient;
  std::optional<Rational> previous_cauchy;
  HomogenizedValue best{f1, Rational(0), 1};
  bool have_quotient = false;
  while (2 * k <= options.k_max) {
    const auto f_2k = eval_power(2 * k);
    if (!f_2k) break;
    const Rational quotient = (*f_2k - f_k) / k;
    const Rational cauchy = previous_quotient ? abs(quotient - *previous_quotient) : Rational(0);
    Rational bound;
    if (phi.defect_bound) {
      // |phi(a^k) - k phi~(a)| <= D, so each quotient is within 2D/k.
      bound = 2 * *phi.defect_bound / k;
    } else {
      bound = previous_cauchy ? std::max(cauchy, *previous_cauchy) : cauchy;
    }
    best = {quotient, bound, 2 * k};
    have_quotient = true;
    // Signature sequences fluctuate, so a single coincidence of two
    // quotients is not enough to stop.
    if (previous_cauchy && cauchy <= options.tolerance && *previous_cauchy <= options.tolerance) {
      break;
    }
    if (previous_quotient) previous_cauchy = cauchy;
    previous_quotient = quotient;
    f_k = *f_2k;
    k *= 2;
  }
  if (!have_quotient) {
    // Even a^2 exceeded the length cap; fall back to phi(a) itself.
    best.error_bound = phi.defect_bound ? *phi.defect_bound : abs(f1);
  }
  return best;
}

Rational sample_defect(const QuasimorphismSpec& phi, const WordSampler& sampler, int trials,
                       std::uint64_t seed) {
  if (trials < 1) throw InputError("sample_defect needs at least one trial");
  Rational worst = 0;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, streams::kDefectSampling, static_cast<std::uint64_t>(t)));
    const BraidWord a = sampler(rng);
    const BraidWord b = sampler(rng);
    const Rational gap = abs(phi.evaluate(concat(a, b)) - phi.evaluate(a) - phi.evaluate(b));
    worst = std::max(worst, gap);
  }
  return worst;
}

WordSampler uniform_word_sampler(int strands, int min_len, int max_len) {
  if (strands < 2 || min_len < 0 || max_len < min_len) {
    throw InputError("bad word sampler parameters");
  }
  return [=](SplitMix64& rng) {
    const long len = rng.uniform_int(min_len, max_len);
    std::vector<int> letters;
    letters.reserve(len);
    for (long k = 0; k < len; ++k) {
      const int gen = static_cast<int>(rng.uniform_int(1, strands - 1));
      letters.push_back(rng.uniform_int(0, 1) ? gen : -gen);
    }
    return BraidWord(std::move(letters), strands);
  };
}

}  // namespace qmdisc
