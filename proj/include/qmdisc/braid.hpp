#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qmdisc {

/// A bijection of {1..n}. images()[k-1] is the final position of the strand
/// that starts at position k.
class Permutation {
 public:
  explicit Permutation(std::size_t n);
  explicit Permutation(std::vector<int> images);

  std::size_t size() const noexcept { return images_.size(); }
  int operator()(int position) const { return images_.at(position - 1); }
  const std::vector<int>& images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  /// Left-to-right composition: apply *this, then `next`.
  Permutation then(const Permutation& next) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// A word in the Artin generators of B_n. Letter +i is sigma_i, -i its
/// inverse. Words are kept verbatim; only free_reduce() cancels letters.
class BraidWord {
 public:
  BraidWord() = default;

  /// Throws InputError when n < 2 or a letter is 0 or |letter| >= n.
  BraidWord(std::vector<int> letters, int strands);

  static BraidWord identity(int strands) { return BraidWord({}, strands); }

  int strands() const noexcept { return strands_; }
  std::span<const int> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  BraidWord inverse() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  std::vector<int> letters_;
  int strands_ = 2;
};

BraidWord make_word(std::vector<int> letters, int strands);
BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord power(const BraidWord& a, long k);
BraidWord free_reduce(const BraidWord& a);

/// Letter count after free reduction: an upper bound on the geodesic length.
std::size_t representative_length(const BraidWord& a);

Permutation permutation(const BraidWord& a);
bool is_pure(const BraidWord& a);

/// Half the signed number of crossings between the strands starting at
/// positions i and j (1-based). Throws DomainError unless `a` is pure.
long linking_number(const BraidWord& a, int i, int j);

/// Text form "1 1 -2": whitespace-separated signed generator indices.
std::string format_letters(const BraidWord& a);
BraidWord parse_letters(const std::string& text, int strands);

/// File form: first non-comment line holds the strand count, the remaining
/// lines hold the letters. Lines starting with '#' are ignored.
BraidWord parse_word_file(const std::string& text);
std::string format_word_file(const BraidWord& a);

}  // namespace qmdisc
