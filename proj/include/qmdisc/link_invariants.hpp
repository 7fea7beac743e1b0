#pragma once

#include "qmdisc/braid.hpp"
#include "qmdisc/exact.hpp"
#include "qmdisc/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qmdisc {

/// Seifert matrix of a braid closure, stored sparsely.
///
/// The surface is the canonical one for a closed braid: one disc per strand
/// and one half-twisted band per letter. Homology generators are the loops
/// through two consecutive bands of the same column, ordered by the word
/// position of their first band, which keeps V + V^T banded.
class SeifertMatrix {
 public:
  struct Entry {
    int row;
    int col;
    long value;
  };

  SeifertMatrix() = default;
  SeifertMatrix(int size, std::vector<Entry> entries);

  int size() const noexcept { return size_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  long at(int row, int col) const;
  std::vector<std::vector<long>> dense() const;

 private:
  int size_ = 0;
  std::vector<Entry> entries_;
};

SeifertMatrix seifert_matrix(const BraidWord& a);

/// Number of connected components of the canonical Seifert surface.
int seifert_surface_components(const BraidWord& a);

/// Signature (#positive - #negative eigenvalues) of a symmetric integer
/// matrix, computed by exact congruence diagonalisation. Throws InputError
/// when the matrix is not square and symmetric.
int matrix_signature(const std::vector<std::vector<long>>& symmetric);
int matrix_signature(const std::vector<std::vector<Rational>>& symmetric);

/// Signature of the closure link of `a` (positive Hopf link: -1).
int braid_signature(const BraidWord& a);

/// A real-valued function on braids together with what is known about its
/// defect. Homomorphisms declare a defect bound of zero.
struct QuasimorphismSpec {
  std::string name;
  std::function<Rational(const BraidWord&)> evaluate;
  std::optional<Rational> defect_bound;
};

/// Sum of linking numbers over all strand pairs; a homomorphism on P_n.
QuasimorphismSpec total_linking_qm();
/// Linking number of one strand pair.
QuasimorphismSpec pair_linking_qm(int i, int j);
/// Closure signature; defect not declared.
QuasimorphismSpec signature_qm();

struct HomogenizeOptions {
  long k_max = 256;
  Rational tolerance = 0;
  std::size_t length_cap = 4096;
};

struct HomogenizedValue {
  Rational value;
  Rational error_bound;
  long k_used = 1;
};

/// Estimates lim phi(a^k)/k along k = 1, 2, 4, ... using the difference
/// quotients (phi(a^2k) - phi(a^k))/k, which are exact as soon as the
/// sequence phi(a^k) is affine in k. Stops early once three consecutive
/// quotients agree to within the tolerance. Without a declared defect the
/// error bound is the larger of the last two Cauchy differences, which is a
/// heuristic rather than a proof.
HomogenizedValue homogenize(const QuasimorphismSpec& phi, const BraidWord& a,
                            const HomogenizeOptions& options = {});

using WordSampler = std::function<BraidWord(SplitMix64&)>;

/// max |phi(ab) - phi(a) - phi(b)| over `trials` sampled pairs: a lower bound
/// on the defect. Trial t draws from a generator keyed by (seed, t).
Rational sample_defect(const QuasimorphismSpec& phi, const WordSampler& sampler,
                       int trials, std::uint64_t seed);

/// Uniform random word: length uniform in [min_len, max_len], letters uniform
/// over the 2(n-1) generators and inverses.
WordSampler uniform_word_sampler(int strands, int min_len, int max_len);

}  // namespace qmdisc
