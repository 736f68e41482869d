#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/complex.hpp"
#include "rainbow/error.hpp"
#include "rainbow/ideal.hpp"
#include "rainbow/linalg.hpp"

namespace rainbow {

/// Betti numbers by (homological degree i, total degree j).
struct CoarseBettiTable {
  std::map<std::pair<int, int>, std::size_t> entries;

  std::size_t at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }

  /// Column sums, index = homological degree.
  std::vector<std::size_t> totals() const {
    std::vector<std::size_t> t;
    for (const auto& [k, v] : entries) {
      if (static_cast<std::size_t>(k.first) >= t.size()) t.resize(k.first + 1, 0);
      t[k.first] += v;
    }
    return t;
  }

  /// Rows j - i occupied by entries in homological degree >= from.
  std::vector<int> rows(int from = 0) const {
    std::vector<int> r;
    for (const auto& [k, v] : entries) {
      if (k.first >= from && v) r.push_back(k.second - k.first);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  friend bool operator==(const CoarseBettiTable&, const CoarseBettiTable&) = default;
};

/// Multigraded Betti numbers beta_{i, alpha}; zero entries are not stored.
class BettiTable {
 public:
  void set(int i, const Monomial& alpha, std::size_t value) {
    if (value) entries_[{i, alpha}] = value;
    else entries_.erase({i, alpha});
  }

  std::size_t at(int i, const Monomial& alpha) const {
    auto it = entries_.find({i, alpha});
    return it == entries_.end() ? 0 : it->second;
  }

  const std::map<std::pair<int, Monomial>, std::size_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  CoarseBettiTable coarse() const {
    CoarseBettiTable c;
    for (const auto& [k, v] : entries_) c.entries[{k.first, static_cast<int>(k.second.degree())}] += v;
    return c;
  }

  /// Table of the ideal I from the table of R/I: drop degree 0, shift down.
  BettiTable ideal_table() const {
    BettiTable t;
    for (const auto& [k, v] : entries_) {
      if (k.first > 0) t.set(k.first - 1, k.second, v);
    }
    return t;
  }

  /// CSV with header `i,j,alpha,rank`.
  std::string to_csv() const {
    std::ostringstream os;
    os << "i,j,alpha,rank\n";
    for (const auto& [k, v] : entries_) {
      os << k.first << ',' << k.second.degree() << ',' << k.second.to_string() << ',' << v << '\n';
    }
    return os.str();
  }

 private:
  std::map<std::pair<int, Monomial>, std::size_t> entries_;
};

/// max (j - i) over the entries of the table.
inline int regularity(const CoarseBettiTable& b) {
  bool any = false;
  int r = 0;
  for (const auto& [k, v] : b.entries) {
    if (!v) continue;
    r = any ? std::max(r, k.second - k.first) : k.second - k.first;
    any = true;
  }
  if (!any) throw Error(ErrorCode::EmptyTable, "regularity of an empty Betti table");
  return r;
}

inline int regularity(const BettiTable& b) { return regularity(b.coarse()); }

namespace detail {

/// Tor_*(k, R/I) in multidegree alpha from the Koszul complex on the
/// variables of alpha tensored with R/I. The basis in degree q is e_F with
/// |F| = q, F inside supp(alpha), and x^(alpha - F) nonzero in R/I.
inline std::vector<std::size_t> koszul_strand_homology(const std::vector<Monomial>& gens,
                                                       const Monomial& alpha, const PrimeField& field) {
  const auto& terms = alpha.terms();
  const std::size_t k = terms.size();
  if (k > 20) throw Error(ErrorCode::SizeCap, "multidegree with more than 20 variables");
  // g divides alpha - F exactly when F avoids the tight set of g: the
  // variables where g already uses the full exponent of alpha.
  std::vector<std::uint32_t> tight;
  for (const auto& g : gens) {
    if (!g.divides(alpha)) continue;
    std::uint32_t t = 0;
    for (std::size_t v = 0; v < k; ++v) {
      if (g.exponent(terms[v].first) == terms[v].second) t |= 1u << v;
    }
    if (t == 0) return std::vector<std::size_t>(k + 1, 0);  // every F hits I
    tight.push_back(t);
  }
  const std::uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1);
  std::vector<std::vector<std::uint32_t>> by_degree(k + 1);
  std::vector<std::int32_t> index(std::size_t{1} << k, -1);
  for (std::uint32_t f = 0; f <= full; ++f) {
    bool nonzero = true;
    for (auto t : tight) {
      if ((f & t) == 0) {
        nonzero = false;
        break;
      }
    }
    if (!nonzero) continue;
    const int q = std::popcount(f);
    index[f] = static_cast<std::int32_t>(by_degree[q].size());
    by_degree[q].push_back(f);
  }
  VectorSpaceComplex v;
  v.maps.resize(k + 1);
  for (std::size_t q = 0; q <= k; ++q) v.dims.push_back(by_degree[q].size());
  for (std::size_t q = 1; q <= k; ++q) {
    v.maps[q] = IntMatrix(v.dims[q], v.dims[q - 1]);
    for (std::size_t r = 0; r < by_degree[q].size(); ++r) {
      const std::uint32_t f = by_degree[q][r];
      int pos = 0;
      for (std::size_t b = 0; b < k; ++b) {
        if (!(f >> b & 1u)) continue;
        ++pos;
        const std::int32_t target = index[f & ~(1u << b)];
        if (target >= 0) v.maps[q].add(r, target, (pos % 2 == 1) ? 1 : -1);
      }
    }
  }
  return v.homology(field);
}

}  // namespace detail

/// Multigraded Betti table of R/I via Koszul homology, over GF(p). Only
/// multidegrees in the lcm closure of G(I) (and 1) can carry Betti numbers.
inline BettiTable koszul_betti(const MonomialIdeal& ideal, const PrimeField& field = PrimeField()) {
  BettiTable t;
  if (ideal.is_unit()) return t;
  t.set(0, Monomial(), 1);
  const auto& gens = ideal.generators();
  for (const auto& alpha : lcm_closure(gens)) {
    const auto h = detail::koszul_strand_homology(gens, alpha, field);
    for (std::size_t q = 1; q < h.size(); ++q) t.set(static_cast<int>(q), alpha, h[q]);
  }
  return t;
}

/// True when all entries in homological degree >= 1 lie in one row.
inline bool has_linear_resolution(const BettiTable& b) { return b.coarse().rows(1).size() <= 1; }

}  // namespace rainbow
