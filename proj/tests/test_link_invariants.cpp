#include "qmdisc/errors.hpp"
#include "qmdisc/link_invariants.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace qmdisc;

namespace {

BraidWord random_word(SplitMix64& rng, int strands, int max_len) {
  return uniform_word_sampler(strands, 0, max_len)(rng);
}

BraidWord mirror(const BraidWord& w) {
  std::vector<int> letters(w.letters().begin(), w.letters().end());
  for (int& l : letters) l = -l;
  return BraidWord(letters, w.strands());
}

// Cyclic Jacobi eigenvalue iteration; test-only oracle for inertia.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t k = 0; k < n; ++k) ev[k] = a[k][k];
  return ev;
}

int numeric_signature(const std::vector<std::vector<long>>& m) {
  std::vector<std::vector<double>> a(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = static_cast<double>(m[i][j]);
  int sig = 0;
  for (double e : jacobi_eigenvalues(a)) sig += e > 1e-6 ? 1 : (e < -1e-6 ? -1 : 0);
  return sig;
}

}  // namespace

TEST_CASE("Seifert matrices of small closures") {
  const SeifertMatrix hopf = seifert_matrix(make_word({1, 1}, 2));
  CHECK(hopf.dense() == std::vector<std::vector<long>>{{-1}});

  const SeifertMatrix trefoil = seifert_matrix(make_word({1, 1, 1}, 2));
  CHECK(trefoil.dense() == std::vector<std::vector<long>>{{-1, 1}, {0, -1}});

  CHECK(seifert_matrix(BraidWord::identity(4)).size() == 0);
  CHECK(braid_signature(BraidWord::identity(4)) == 0);
}

TEST_CASE("Seifert matrix size is c - n + s") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    const BraidWord w = random_word(rng, n, 14);
    const int expected =
        static_cast<int>(w.size()) - n + seifert_surface_components(w);
    CHECK(seifert_matrix(w).size() == expected);
    CHECK(expected >= 0);
  }
}

TEST_CASE("matrix_signature") {
  CHECK(matrix_signature(std::vector<std::vector<long>>{{-2}}) == -1);
  CHECK(matrix_signature(std::vector<std::vector<long>>{{-2, 1}, {1, -2}}) == -2);
  CHECK(matrix_signature(std::vector<std::vector<long>>{{0, 0}, {0, 0}}) == 0);
  CHECK(matrix_signature(std::vector<std::vector<long>>{{0, 3}, {3, 0}}) == 0);
  CHECK(matrix_signature(std::vector<std::vector<long>>{}) == 0);
  CHECK_THROWS_AS(matrix_signature(std::vector<std::vector<long>>{{0, 1}, {2, 0}}), InputError);
  CHECK_THROWS_AS(matrix_signature(std::vector<std::vector<long>>{{0, 1}}), InputError);
  CHECK(matrix_signature(std::vector<std::vector<Rational>>{
            {make_rational(1, 2), 0}, {0, make_rational(-3, 7)}}) == 0);
}

TEST_CASE("property: matrix_signature agrees with Jacobi eigenvalues") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 7));
    // Rank-deficient and zero-diagonal cases come from sparse small entries.
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const long v = rng.uniform_int(0, 2) == 0 ? rng.uniform_int(-3, 3) : 0;
        m[i][j] = m[j][i] = v;
      }
    }
    std::vector<std::vector<long>> neg = m;
    for (auto& row : neg)
      for (auto& v : row) v = -v;
    const int sig = matrix_signature(m);
    CHECK(sig == numeric_signature(m));
    CHECK(sig + matrix_signature(neg) == 0);
    CHECK(std::abs(sig) <= n);
  }
}

TEST_CASE("matrix_signature survives int64 overflow in pivots") {
  // Entries near 2^40 make the checked fast path overflow.
  const long big = 1L << 40;
  const std::vector<std::vector<long>> m = {
      {big, big - 1, 3}, {big - 1, big, big - 7}, {3, big - 7, 1}};
  CHECK(matrix_signature(m) == numeric_signature(m));
}

TEST_CASE("torus link signatures") {
  CHECK(braid_signature(make_word({1, 1}, 2)) == -1);
  CHECK(braid_signature(make_word({1, 1, 1}, 2)) == -2);
  CHECK(braid_signature(BraidWord::identity(2)) == 0);
  for (long k = 1; k <= 20; ++k) {
    // Oracle: V + V^T of the (2, 2k) torus link is the (2k-1)-square
    // tridiagonal matrix with -2 on the diagonal and 1 beside it, whose
    // eigenvalues -2 + 2 cos(pi j / 2k) are all negative.
    int oracle = 0;
    for (long j = 1; j <= 2 * k - 1; ++j) {
      oracle += (-2 + 2 * std::cos(M_PI * static_cast<double>(j) / (2.0 * k))) > 0 ? 1 : -1;
    }
    CHECK(braid_signature(power(make_word({1}, 2), 2 * k)) == oracle);
    CHECK(oracle == 1 - 2 * k);
  }
  // (3, k) torus links and the figure-eight knot.
  CHECK(braid_signature(power(make_word({1, 2}, 3), 2)) == -2);
  CHECK(braid_signature(power(make_word({1, 2}, 3), 3)) == -4);
  CHECK(braid_signature(power(make_word({1, 2}, 3), 4)) == -6);
  CHECK(braid_signature(power(make_word({1, 2}, 3), 5)) == -8);
  CHECK(braid_signature(make_word({1, -2, 1, -2}, 3)) == 0);
}

TEST_CASE("property: closure signature is a link invariant") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const BraidWord a = random_word(rng, n, 10);
    const BraidWord w = random_word(rng, n, 10);
    const int sig = braid_signature(a);
    CHECK(braid_signature(free_reduce(a)) == sig);
    CHECK(braid_signature(concat(concat(w, a), w.inverse())) == sig);
    CHECK(braid_signature(mirror(a)) == -sig);
    // Markov stabilisation in B_{n+1}, both signs.
    std::vector<int> stab(a.letters().begin(), a.letters().end());
    stab.push_back(n);
    CHECK(braid_signature(BraidWord(stab, n + 1)) == sig);
    stab.back() = -n;
    CHECK(braid_signature(BraidWord(stab, n + 1)) == sig);
  }
}

TEST_CASE("homogenize") {
  const BraidWord a12 = make_word({1, 1}, 2);
  const HomogenizedValue sig = homogenize(signature_qm(), a12, {.k_max = 256});
  CHECK(sig.value == -2);
  CHECK(sig.error_bound == 0);

  const HomogenizedValue lk = homogenize(pair_linking_qm(1, 2), a12);
  CHECK(lk.value == 1);
  CHECK(lk.k_used == 1);
  CHECK(lk.error_bound == 0);

  CHECK(homogenize(signature_qm(), BraidWord::identity(3)).value == 0);
  CHECK(homogenize(total_linking_qm(), BraidWord::identity(3)).value == 0);
  CHECK_THROWS_AS(homogenize(signature_qm(), a12, {.k_max = 1}), InputError);

  // Trefoil: sign(sigma_1^{3k}) is not affine for small k but converges.
  const HomogenizedValue t = homogenize(signature_qm(), make_word({1, 1, 1}, 2));
  CHECK(std::abs(to_double(t.value) + 3.0) <= to_double(t.error_bound) + 1e-12);
}

TEST_CASE("homogenize respects the length cap") {
  const BraidWord w = make_word({1, 2, 1, 2}, 3);
  const HomogenizedValue h =
      homogenize(signature_qm(), w, {.k_max = 1024, .tolerance = -1, .length_cap = 64});
  CHECK(h.k_used <= 16);
}

TEST_CASE("property: homogenized values scale under powers") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 3));
    const BraidWord a = free_reduce(random_word(rng, n, 6));
    const HomogenizedValue base = homogenize(signature_qm(), a, {.k_max = 64});
    for (long m = 2; m <= 5; ++m) {
      const HomogenizedValue scaled = homogenize(signature_qm(), power(a, m), {.k_max = 64});
      const double gap = std::abs(to_double(scaled.value) - m * to_double(base.value));
      CHECK(gap <= to_double(scaled.error_bound) + m * to_double(base.error_bound) + 1e-12);
    }
  }
}

TEST_CASE("sample_defect") {
  // lk is a homomorphism on P_2 = <sigma_1^2>.
  const WordSampler pure2 = [](SplitMix64& rng) {
    return power(make_word({1, 1}, 2), rng.uniform_int(-6, 6));
  };
  CHECK(sample_defect(pair_linking_qm(1, 2), pure2, 50, 1) == 0);

  // Exhaustive oracle on B_2 words of length <= 12: defects are 0 or 1.
  std::set<long> observed;
  for (int x = -12; x <= 12; ++x) {
    for (int y = -12; y <= 12; ++y) {
      const BraidWord a = power(make_word({1}, 2), x);
      const BraidWord b = power(make_word({1}, 2), y);
      observed.insert(std::labs(braid_signature(concat(a, b)) - braid_signature(a) -
                                braid_signature(b)));
    }
  }
  CHECK(observed == std::set<long>{0, 1});
  const Rational sampled = sample_defect(signature_qm(), uniform_word_sampler(2, 0, 12), 200, 9);
  CHECK((sampled == 0 || sampled == 1));

  const auto sampler = uniform_word_sampler(3, 0, 8);
  CHECK(sample_defect(signature_qm(), sampler, 1, 42) ==
        sample_defect(signature_qm(), sampler, 1, 42));
  CHECK_THROWS_AS(sample_defect(signature_qm(), sampler, 0, 42), InputError);
}
