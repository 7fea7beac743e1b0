#pragma once

// Exact inertia of sparse symmetric matrices by congruence elimination.

#include "qmdisc/exact.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qmdisc::detail {

struct Overflow : std::exception {};

/// Reduced int64 fraction; every operation throws Overflow instead of
/// wrapping, so callers can retry with unbounded rationals.
class CheckedRational {
 public:
  CheckedRational() = default;
  CheckedRational(long v) : num_(v) {}  // NOLINT: implicit from integers

  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  friend CheckedRational operator*(const CheckedRational& a, const CheckedRational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedRational operator/(const CheckedRational& a, const CheckedRational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_,
                static_cast<__int128>(a.den_) * b.num_);
  }
  friend CheckedRational operator+(const CheckedRational& a, const CheckedRational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend CheckedRational operator-(const CheckedRational& a, const CheckedRational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static CheckedRational make(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("division by zero");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 kLimit = static_cast<__int128>(INT64_MAX);
    if (num > kLimit || num < -kLimit || den > kLimit) throw Overflow{};
    CheckedRational out;
    out.num_ = static_cast<long>(num);
    out.den_ = static_cast<long>(den);
    return out;
  }

  long num_ = 0;
  long den_ = 1;
};

inline bool is_zero(const CheckedRational& q) { return q.is_zero(); }
inline int sign_of(const CheckedRational& q) { return q.sign(); }
inline bool is_zero(const Rational& q) { return q == 0; }
inline int sign_of(const Rational& q) { return q.sign(); }

/// Symmetric matrix with full (both triangles) sparse row storage.
template <class R>
class SparseSymmetric {
 public:
  explicit SparseSymmetric(int n) : rows_(n) {}

  int size() const noexcept { return static_cast<int>(rows_.size()); }

  void add(int i, int j, const R& v) {
    accumulate(i, j, v);
    if (i != j) accumulate(j, i, v);
  }

  /// Returns (positive, negative) eigenvalue counts.
  std::pair<int, int> inertia() {
    int positive = 0;
    int negative = 0;
    std::vector<bool> alive(rows_.size(), true);
    for (int k = 0; k < size(); ++k) {
      while (alive[k]) {
        auto& row = rows_[k];
        const auto diag = row.find(k);
        if (diag != row.end()) {
          count(diag->second, positive, negative);
          eliminate_one(k, alive);
          continue;
        }
        if (row.empty()) {
          alive[k] = false;
          continue;
        }
        const int j = row.begin()->first;
        const auto other_diag = rows_[j].find(j);
        if (other_diag != rows_[j].end()) {
          count(other_diag->second, positive, negative);
          eliminate_one(j, alive);
          continue;
        }
        // [[0, a], [a, 0]] block: one positive and one negative eigenvalue.
        ++positive;
        ++negative;
        eliminate_two(k, j, alive);
      }
    }
    return {positive, negative};
  }

 private:
  void accumulate(int i, int j, const R& v) {
    if (is_zero(v)) return;
    auto& row = rows_[i];
    auto it = row.find(j);
    if (it == row.end()) {
      row.emplace(j, v);
    } else {
      it->second = it->second + v;
      if (is_zero(it->second)) row.erase(it);
    }
  }

  static void count(const R& pivot, int& positive, int& negative) {
    if (sign_of(pivot) > 0) {
      ++positive;
    } else {
      ++negative;
    }
  }

  void detach(int k, const std::vector<int>& neighbours) {
    for (int u : neighbours) rows_[u].erase(k);
    rows_[k].clear();
  }

  void eliminate_one(int k, std::vector<bool>& alive) {
    const R pivot = rows_[k].at(k);
    std::vector<std::pair<int, R>> col;
    for (const auto& [u, v] : rows_[k]) {
      if (u != k) col.emplace_back(u, v);
    }
    std::vector<int> neighbours;
    for (const auto& [u, v] : col) neighbours.push_back(u);
    detach(k, neighbours);
    for (std::size_t a = 0; a < col.size(); ++a) {
      const R scaled = col[a].second / pivot;
      for (std::size_t b = a; b < col.size(); ++b) {
        const R delta = R(0) - scaled * col[b].second;
        add(col[a].first, col[b].first, delta);
      }
    }
    alive[k] = false;
  }

  void eliminate_two(int k, int j, std::vector<bool>& alive) {
    const R a = rows_[k].at(j);
    std::map<int, std::pair<R, R>> col;  // u -> (A[u][k], A[u][j])
    for (const auto& [u, v] : rows_[k]) {
      if (u != j && u != k) col[u].first = v;
    }
    for (const auto& [u, v] : rows_[j]) {
      if (u != j && u != k) col[u].second = v;
    }
    std::vector<int> neighbours;
    for (const auto& [u, v] : col) neighbours.push_back(u);
    detach(k, neighbours);
    detach(j, neighbours);
    rows_[k].clear();
    rows_[j].clear();
    std::vector<std::pair<int, std::pair<R, R>>> flat(col.begin(), col.end());
    for (std::size_t x = 0; x < flat.size(); ++x) {
      for (std::size_t y = x; y < flat.size(); ++y) {
        const auto& [uk, uj] = flat[x].second;
        const auto& [vk, vj] = flat[y].second;
        const R delta = R(0) - (uk * vj + uj * vk) / a;
        add(flat[x].first, flat[y].first, delta);
      }
    }
    alive[k] = false;
    alive[j] = false;
  }

  std::vector<std::map<int, R>> rows_;
};

struct Triplet {
  int row;
  int col;
  long value;
};

/// Signature of the symmetric matrix given by upper-or-lower triplets that are
/// added symmetrically (a triplet (i, j, v) with i != j sets both A_ij and
/// A_ji to v).
inline int signature_of_triplets(int n, const std::vector<Triplet>& triplets) {
  try {
    SparseSymmetric<CheckedRational> m(n);
    for (const auto& t : triplets) m.add(t.row, t.col, CheckedRational(t.value));
    const auto [p, q] = m.inertia();
    return p - q;
  } catch (const Overflow&) {
    SparseSymmetric<Rational> m(n);
    for (const auto& t : triplets) m.add(t.row, t.col, Rational(t.value));
    const auto [p, q] = m.inertia();
    return p - q;
  }
}

}  // namespace qmdisc::detail
