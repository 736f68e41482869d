#pragma once

// Prime-field scalars and rank computations. All homology in the library is
// computed through rank() below.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rainbow/error.hpp"

namespace rainbow {

inline constexpr std::uint32_t kDefaultPrime = 32003;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Arithmetic in GF(p). Values are canonical residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (!is_prime(p) || p > (1u << 31)) {
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a supported prime");
    }
  }

  std::uint32_t prime() const { return p_; }

  std::uint32_t from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Requires a != 0.
  std::uint32_t inv(std::uint32_t a) const { return pow(a, p_ - 2); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// A value of GF(p) bundled with its prime.
class FieldScalar {
 public:
  FieldScalar(const PrimeField& field, std::int64_t v) : field_(field), value_(field.from_int(v)) {}

  std::uint32_t value() const { return value_; }
  const PrimeField& field() const { return field_; }

  FieldScalar operator+(const FieldScalar& o) const { return make(field_.add(value_, same(o))); }
  FieldScalar operator-(const FieldScalar& o) const { return make(field_.sub(value_, same(o))); }
  FieldScalar operator*(const FieldScalar& o) const { return make(field_.mul(value_, same(o))); }
  FieldScalar operator-() const { return make(field_.neg(value_)); }
  FieldScalar inverse() const {
    if (value_ == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
    return make(field_.inv(value_));
  }
  bool operator==(const FieldScalar& o) const { return field_ == o.field_ && value_ == o.value_; }

 private:
  FieldScalar make(std::uint32_t v) const {
    FieldScalar r = *this;
    r.value_ = v;
    return r;
  }
  std::uint32_t same(const FieldScalar& o) const {
    if (!(field_ == o.field_)) throw Error(ErrorCode::InvalidArgument, "mixed primes");
    return o.value_;
  }

  PrimeField field_;
  std::uint32_t value_;
};

/// Sparse integer matrix stored by rows; entries are reduced modulo the
/// prime only when a rank is taken.
class IntMatrix {
 public:
  using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, std::int64_t v) {
    if (v != 0) rows_.at(r).emplace_back(static_cast<std::uint32_t>(c), v);
  }
  const Row& row(std::size_t r) const { return rows_.at(r); }

  /// Dense view with duplicate entries summed.
  std::vector<std::vector<std::int64_t>> dense() const {
    std::vector<std::vector<std::int64_t>> d(rows(), std::vector<std::int64_t>(cols_, 0));
    for (std::size_t r = 0; r < rows(); ++r) {
      for (auto [c, v] : rows_[r]) d[r][c] += v;
    }
    return d;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

namespace detail {

inline std::size_t dense_rank(const IntMatrix& m, const PrimeField& f) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols, 0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (auto [c, v] : m.row(r)) a[r][c] = f.add(a[r][c], f.from_int(v));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::uint32_t inv = f.inv(a[rank][c]);
    for (std::size_t k = c; k < cols; ++k) a[rank][k] = f.mul(a[rank][k], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint32_t factor = a[r][c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        if (a[rank][k] != 0) a[r][k] = f.sub(a[r][k], f.mul(factor, a[rank][k]));
      }
    }
    ++rank;
  }
  return rank;
}

/// Row reduction against a table of pivot rows keyed by leading column.
inline std::size_t sparse_rank(const IntMatrix& m, const PrimeField& f) {
  using SRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  std::unordered_map<std::uint32_t, SRow> pivots;
  pivots.reserve(m.rows() * 2);
  SRow cur, tmp;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cur.clear();
    for (auto [c, v] : m.row(r)) cur.emplace_back(c, f.from_int(v));
    std::sort(cur.begin(), cur.end());
    // merge duplicates
    SRow merged;
    for (auto [c, v] : cur) {
      if (!merged.empty() && merged.back().first == c) {
        merged.back().second = f.add(merged.back().second, v);
      } else {
        merged.emplace_back(c, v);
      }
    }
    cur.clear();
    for (auto e : merged) {
      if (e.second != 0) cur.push_back(e);
    }
    while (!cur.empty()) {
      auto it = pivots.find(cur.front().first);
      if (it == pivots.end()) {
        const std::uint32_t inv = f.inv(cur.front().second);
        for (auto& e : cur) e.second = f.mul(e.second, inv);
        pivots.emplace(cur.front().first, cur);
        break;
      }
      // cur -= cur.lead * pivot (pivot is monic)
      const std::uint32_t factor = cur.front().second;
      const SRow& p = it->second;
      tmp.clear();
      std::size_t i = 0, j = 0;
      while (i < cur.size() || j < p.size()) {
        if (j == p.size() || (i < cur.size() && cur[i].first < p[j].first)) {
          tmp.push_back(cur[i++]);
        } else if (i == cur.size() || p[j].first < cur[i].first) {
          tmp.emplace_back(p[j].first, f.neg(f.mul(factor, p[j].second)));
          ++j;
        } else {
          const std::uint32_t v = f.sub(cur[i].second, f.mul(factor, p[j].second));
          if (v != 0) tmp.emplace_back(cur[i].first, v);
          ++i;
          ++j;
        }
      }
      cur.swap(tmp);
    }
  }
  return pivots.size();
}

}  // namespace detail

/// Rank over GF(p). Dense elimination below 2000 columns, sparse above.
inline std::size_t rank(const IntMatrix& m, const PrimeField& f) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.cols() < 2000 && m.rows() * m.cols() <= 4'000'000) return detail::dense_rank(m, f);
  return detail::sparse_rank(m, f);
}

}  // namespace rainbow
