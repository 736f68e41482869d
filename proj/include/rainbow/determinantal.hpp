#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/error.hpp"
#include "rainbow/ideal.hpp"
#include "rainbow/monomial.hpp"
#include "rainbow/term_order.hpp"

namespace rainbow {

using ColumnSet = std::vector<int>;  // sorted, 1-based

/// Generic n x m matrix of variables x_ij.
struct VariableMatrix {
  int n = 0;
  int m = 0;

  VariableMatrix(int rows, int cols) : n(rows), m(cols) {
    if (n < 1 || m < n) {
      throw Error(ErrorCode::InvalidArgument,
                  "need 1 <= n <= m, got n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }

  std::vector<Variable> variables() const {
    std::vector<Variable> v;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= m; ++j) v.push_back(grid_var(i, j));
    }
    return v;
  }
};

/// All k-subsets of [m] in lexicographic order.
inline std::vector<ColumnSet> subsets(int m, int k) {
  std::vector<ColumnSet> out;
  if (k < 0 || k > m) return out;
  ColumnSet s(k);
  std::iota(s.begin(), s.end(), 1);
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == m - k + i + 1) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

/// Pure (n-1)-dimensional simplicial complex on [m], given by its facets.
class PureComplex {
 public:
  PureComplex(int n, int m, std::vector<ColumnSet> facets = {}) : n_(n), m_(m) {
    if (n < 1 || m < n) throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= m");
    std::set<ColumnSet> s;
    for (auto f : facets) {
      std::sort(f.begin(), f.end());
      if (static_cast<int>(f.size()) != n || std::adjacent_find(f.begin(), f.end()) != f.end() ||
          f.front() < 1 || f.back() > m) {
        throw Error(ErrorCode::InvalidArgument, "facet is not an n-subset of [m]");
      }
      s.insert(std::move(f));
    }
    facets_.assign(s.begin(), s.end());
  }

  static PureComplex full(int n, int m) { return PureComplex(n, m, subsets(m, n)); }

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<ColumnSet>& facets() const { return facets_; }
  std::size_t size() const { return facets_.size(); }
  bool contains(const ColumnSet& f) const { return std::binary_search(facets_.begin(), facets_.end(), f); }

  nlohmann::json to_json() const { return {{"n", n_}, {"m", m_}, {"facets", facets_}}; }

  static PureComplex from_json(const nlohmann::json& j) {
    try {
      return PureComplex(j.at("n").get<int>(), j.at("m").get<int>(),
                         j.at("facets").get<std::vector<ColumnSet>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("pure complex JSON: ") + e.what());
    }
  }

  friend bool operator==(const PureComplex&, const PureComplex&) = default;

 private:
  int n_;
  int m_;
  std::vector<ColumnSet> facets_;
};

struct SignedTerm {
  int sign = 1;
  Monomial monomial;
};

namespace detail {

inline std::vector<SignedTerm> permutation_terms(const ColumnSet& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SignedTerm> out;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    std::vector<Monomial::Term> t;
    for (int i = 0; i < n; ++i) t.push_back({grid_var(i + 1, a[perm[i]]), 1});
    out.push_back({inversions % 2 ? -1 : 1, Monomial(std::move(t))});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

/// Permutation expansion of the maximal minor on columns a.
inline std::vector<SignedTerm> minor_terms(const VariableMatrix& mat, const ColumnSet& a) {
  if (static_cast<int>(a.size()) != mat.n || a.empty() || a.back() > mat.m) {
    throw Error(ErrorCode::InvalidArgument, "minor needs n columns of [m]");
  }
  return detail::permutation_terms(a);
}

/// Lead term of [a] together with its permutation sign.
inline SignedTerm initial_term(const TermOrder& order, const ColumnSet& a) {
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "empty column set");
  const auto terms = detail::permutation_terms(a);
  const SignedTerm* best = &terms.front();
  for (const auto& t : terms) {
    const auto c = order.compare(t.monomial, best->monomial);
    if (c > 0) best = &t;
    else if (c == 0 && &t != best) throw Error(ErrorCode::NonTotalOrder, "tie inside a minor");
  }
  return *best;
}

inline Monomial initial_minor(const TermOrder& order, const ColumnSet& a) {
  return initial_term(order, a).monomial;
}

inline MonomialIdeal initial_ideal_maximal_minors(const VariableMatrix& mat, const TermOrder& order) {
  std::vector<Monomial> g;
  for (const auto& a : subsets(mat.m, mat.n)) g.push_back(initial_minor(order, a));
  MonomialIdeal ideal(g);
  if (ideal.size() != g.size()) throw Error(ErrorCode::DegenerateOrder, "two minors share an initial term");
  return ideal;
}

/// Complementary complex: the n-subsets of [m] that are not facets.
inline PureComplex alexander_dual_complex(const PureComplex& delta) {
  std::vector<ColumnSet> out;
  for (auto& a : subsets(delta.m(), delta.n())) {
    if (!delta.contains(a)) out.push_back(std::move(a));
  }
  return PureComplex(delta.n(), delta.m(), std::move(out));
}

inline MonomialIdeal rainbow_dfi(const PureComplex& delta, const TermOrder& order) {
  std::vector<Monomial> g;
  for (const auto& a : delta.facets()) g.push_back(initial_minor(order, a));
  return MonomialIdeal(std::move(g));
}

/// Every pair of distinct facets meets in fewer than n - 1 vertices.
inline bool overlap_condition(const PureComplex& d) {
  const auto& f = d.facets();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      ColumnSet common;
      std::set_intersection(f[i].begin(), f[i].end(), f[j].begin(), f[j].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) >= d.n() - 1) return false;
    }
  }
  return true;
}

/// Sorted column indices of a monomial.
inline ColumnSet columns_of(const Monomial& mono) {
  ColumnSet c;
  for (const auto& [v, e] : mono.terms()) c.push_back(v.col);
  std::sort(c.begin(), c.end());
  return c;
}

/// Random term order whose initial terms of the C(m, n) minors are distinct.
template <class Rng>
TermOrder random_term_order(const VariableMatrix& mat, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    TermOrder o = TermOrder::random(mat.n, mat.m, rng);
    try {
      initial_ideal_maximal_minors(mat, o);
      return o;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateOrder) throw;
    }
  }
  throw Error(ErrorCode::DegenerateOrder, "no admissible random order found");
}

}  // namespace rainbow
