#include "qmdisc/braid.hpp"

#include "qmdisc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace qmdisc {

Permutation::Permutation(std::size_t n) : images_(n) {
  std::iota(images_.begin(), images_.end(), 1);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[v - 1]) {
      throw InputError("permutation images must be a bijection on 1..n");
    }
    seen[v - 1] = true;
  }
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (images_[k] != static_cast<int>(k + 1)) return false;
  }
  return true;
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw InputError("permutation size mismatch");
  std::vector<int> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = next.images_[images_[k] - 1];
  return Permutation(std::move(out));
}

BraidWord::BraidWord(std::vector<int> letters, int strands)
    : letters_(std::move(letters)), strands_(strands) {
  if (strands < 2) throw InputError("a braid needs at least 2 strands");
  for (int l : letters_) {
    if (l == 0 || std::abs(l) >= strands) {
      throw InputError("generator index " + std::to_string(l) +
                       " out of range for " + std::to_string(strands) +
                       " strands");
    }
  }
}

BraidWord BraidWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& l : out) l = -l;
  return BraidWord(std::move(out), strands_);
}

BraidWord make_word(std::vector<int> letters, int strands) {
  return BraidWord(std::move(letters), strands);
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
  if (a.strands() != b.strands()) {
    throw InputError("cannot concatenate braids on " +
                     std::to_string(a.strands()) + " and " +
                     std::to_string(b.strands()) + " strands");
  }
  std::vector<int> out(a.letters().begin(), a.letters().end());
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return BraidWord(std::move(out), a.strands());
}

BraidWord power(const BraidWord& a, long k) {
  const BraidWord base = k < 0 ? a.inverse() : a;
  const auto reps = static_cast<std::size_t>(k < 0 ? -k : k);
  std::vector<int> out;
  out.reserve(base.size() * reps);
  for (std::size_t r = 0; r < reps; ++r) {
    out.insert(out.end(), base.letters().begin(), base.letters().end());
  }
  return BraidWord(std::move(out), a.strands());
}

BraidWord free_reduce(const BraidWord& a) {
  std::vector<int> stack;
  stack.reserve(a.size());
  for (int l : a.letters()) {
    if (!stack.empty() && stack.back() == -l) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return BraidWord(std::move(stack), a.strands());
}

std::size_t representative_length(const BraidWord& a) {
  return free_reduce(a).size();
}

Permutation permutation(const BraidWord& a) {
  // strand_at[p] = starting position of the strand currently at position p.
  std::vector<int> strand_at(a.strands());
  std::iota(strand_at.begin(), strand_at.end(), 1);
  for (int l : a.letters()) {
    const int i = std::abs(l) - 1;
    std::swap(strand_at[i], strand_at[i + 1]);
  }
  std::vector<int> images(a.strands());
  for (int p = 0; p < a.strands(); ++p) images[strand_at[p] - 1] = p + 1;
  return Permutation(std::move(images));
}

bool is_pure(const BraidWord& a) { return permutation(a).is_identity(); }

long linking_number(const BraidWord& a, int i, int j) {
  if (i == j) throw InputError("linking number needs two distinct strands");
  if (i < 1 || j < 1 || i > a.strands() || j > a.strands()) {
    throw InputError("strand index out of range");
  }
  if (!is_pure(a)) throw DomainError("linking number of a non-pure braid");
  std::vector<int> strand_at(a.strands());
  std::iota(strand_at.begin(), strand_at.end(), 1);
  long signed_crossings = 0;
  for (int l : a.letters()) {
    const int p = std::abs(l) - 1;
    const int s = strand_at[p];
    const int t = strand_at[p + 1];
    if ((s == i && t == j) || (s == j && t == i)) signed_crossings += l > 0 ? 1 : -1;
    std::swap(strand_at[p], strand_at[p + 1]);
  }
  // Pure braids cross every pair an even number of times.
  return signed_crossings / 2;
}

std::string format_letters(const BraidWord& a) {
  std::ostringstream out;
  bool first = true;
  for (int l : a.letters()) {
    if (!first) out << ' ';
    out << l;
    first = false;
  }
  return out.str();
}

BraidWord parse_letters(const std::string& text, int strands) {
  std::istringstream in(text);
  std::vector<int> letters;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw InputError("bad braid letter '" + token + "'");
    }
    if (used != token.size()) throw InputError("bad braid letter '" + token + "'");
    letters.push_back(value);
  }
  return BraidWord(std::move(letters), strands);
}

BraidWord parse_word_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int strands = 0;
  std::string body;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (strands == 0) {
      try {
        strands = std::stoi(line.substr(first));
      } catch (const std::exception&) {
        throw InputError("braid file must start with the strand count");
      }
      continue;
    }
    body += line + ' ';
  }
  if (strands == 0) throw InputError("braid file has no strand count");
  return parse_letters(body, strands);
}

std::string format_word_file(const BraidWord& a) {
  return std::to_string(a.strands()) + "\n" + format_letters(a) + "\n";
}

}  // namespace qmdisc
