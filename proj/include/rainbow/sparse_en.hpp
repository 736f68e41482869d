#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rainbow/complex.hpp"
#include "rainbow/determinantal.hpp"
#include "rainbow/error.hpp"
#include "rainbow/hilbert.hpp"
#include "rainbow/monomial.hpp"
#include "rainbow/term_order.hpp"

namespace rainbow {

/// g^(alpha) (x) f_I, living in homological degree |alpha| + 1 with
/// |I| = n + |alpha|.
struct ENBasisElement {
  std::vector<int> alpha;
  ColumnSet columns;

  int degree() const {
    int s = 1;
    for (int a : alpha) s += a;
    return s;
  }

  std::string label() const {
    std::string s = "g(";
    for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
    s += ")f(";
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + std::to_string(columns[i]);
    return s + ")";
  }

  static ENBasisElement parse(const std::string& label) {
    ENBasisElement e;
    detail::TextCursor cur(label);
    auto list = [&](std::vector<int>& out) {
      cur.expect('(');
      if (!cur.accept(')')) {
        do out.push_back(static_cast<int>(cur.number()));
        while (cur.accept(','));
        cur.expect(')');
      }
    };
    cur.expect('g');
    list(e.alpha);
    cur.expect('f');
    list(e.columns);
    if (!cur.done()) cur.fail("trailing input in basis label");
    return e;
  }

  friend auto operator<=>(const ENBasisElement&, const ENBasisElement&) = default;
};

inline constexpr const char* kUnitLabel = "R";

/// Entry of a higher classical differential: sign * x_{row,col} * target.
struct ENEntry {
  std::size_t from;
  std::size_t to;
  int sign;
  Variable var;
};

/// Classical Eagon-Northcott complex of the generic n x m matrix. It is only
/// Z^n x Z^m graded, so it is kept apart from BasedComplex; degree 0 is R and
/// d_1(f_I) is the full minor [I].
class ENComplex {
 public:
  ENComplex(int n, int m) : mat_(n, m) {
    basis_.resize(m - n + 2);
    entries_.resize(m - n + 2);
    for (int l = 1; l <= m - n + 1; ++l) {
      for (const auto& alpha : compositions(l - 1, n)) {
        for (const auto& cols : subsets(m, n + l - 1)) {
          index_.emplace(ENBasisElement{alpha, cols}, basis_[l].size());
          basis_[l].push_back({alpha, cols});
        }
      }
    }
    for (int l = 2; l <= m - n + 1; ++l) {
      for (std::size_t s = 0; s < basis_[l].size(); ++s) {
        const auto& e = basis_[l][s];
        for (int i = 0; i < n; ++i) {
          if (e.alpha[i] == 0) continue;
          auto alpha = e.alpha;
          --alpha[i];
          for (std::size_t p = 0; p < e.columns.size(); ++p) {
            ColumnSet rest = e.columns;
            rest.erase(rest.begin() + static_cast<long>(p));
            entries_[l].push_back({s, index_.at({alpha, rest}), (p % 2 == 0) ? 1 : -1,
                                   grid_var(i + 1, e.columns[p])});
          }
        }
      }
    }
  }

  int n() const { return mat_.n; }
  int m() const { return mat_.m; }
  int top_degree() const { return mat_.m - mat_.n + 1; }

  /// Ranks in degrees 0..top, degree 0 being R.
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r{1};
    for (int l = 1; l <= top_degree(); ++l) r.push_back(basis_[l].size());
    return r;
  }

  const std::vector<ENBasisElement>& basis(int l) const { return basis_.at(l); }
  const std::vector<ENEntry>& entries(int l) const { return entries_.at(l); }
  std::size_t index_of(const ENBasisElement& e) const { return index_.at(e); }

  /// d_1 d_2 = 0 through the minors and d_{l-1} d_l = 0 above, as
  /// polynomial identities.
  bool is_complex() const {
    for (int l = 2; l <= top_degree(); ++l) {
      std::vector<std::vector<const ENEntry*>> lower(basis_[l - 1].size());
      if (l > 2) {
        for (const auto& e : entries_[l - 1]) lower[e.from].push_back(&e);
      }
      std::map<std::pair<std::size_t, std::size_t>, Polynomial> sums;
      for (const auto& a : entries_[l]) {
        if (l == 2) {
          for (const auto& t : minor_terms(mat_, basis_[1][a.to].columns)) {
            sums[{a.from, 0}].add(t.monomial * Monomial::of(a.var), a.sign * t.sign);
          }
        } else {
          for (const ENEntry* b : lower[a.to]) {
            sums[{a.from, b->to}].add(Monomial::of(a.var) * Monomial::of(b->var), a.sign * b->sign);
          }
        }
      }
      for (const auto& [k, p] : sums) {
        if (!p.is_zero()) return false;
      }
    }
    return true;
  }

  static std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    auto go = [&](auto&& self, int i, int left) -> void {
      if (i == parts - 1) {
        cur[i] = left;
        out.push_back(cur);
        return;
      }
      for (int a = left; a >= 0; --a) {
        cur[i] = a;
        self(self, i + 1, left - a);
      }
    };
    go(go, 0, total);
    return out;
  }

 private:
  VariableMatrix mat_;
  std::vector<std::vector<ENBasisElement>> basis_;
  std::vector<std::vector<ENEntry>> entries_;
  std::map<ENBasisElement, std::size_t> index_;
};

inline ENComplex en_complex(int n, int m) { return ENComplex(n, m); }

/// Homogenize the Eagon-Northcott complex with respect to `order` and set
/// t = 0. Each f_I gets the lead term of [I]; above, an element gets the
/// order-maximum of x_ij * mdeg(target) over its classical terms and keeps
/// exactly the terms attaining it.
inline BasedComplex sparse_en(const TermOrder& order) {
  const int n = order.rows(), m = order.cols();
  const ENComplex en(n, m);
  BasedComplex c;
  c.add_element(0, {kUnitLabel, Monomial()});
  for (const auto& e : en.basis(1)) {
    const SignedTerm lead = initial_term(order, e.columns);
    const std::size_t k = c.add_element(1, {e.label(), lead.monomial});
    c.add_entry(1, {k, 0, lead.sign, lead.monomial});
  }
  for (int l = 2; l <= en.top_degree(); ++l) {
    std::vector<std::vector<const ENEntry*>> by_source(en.basis(l).size());
    for (const auto& a : en.entries(l)) by_source[a.from].push_back(&a);
    for (std::size_t s = 0; s < en.basis(l).size(); ++s) {
      std::optional<Monomial> best;
      for (const ENEntry* a : by_source[s]) {
        Monomial cand = Monomial::of(a->var) * c.element(l - 1, a->to).mdeg;
        if (!best || order.compare(cand, *best) > 0) best = std::move(cand);
      }
      const std::size_t k = c.add_element(l, {en.basis(l)[s].label(), *best});
      for (const ENEntry* a : by_source[s]) {
        if (Monomial::of(a->var) * c.element(l - 1, a->to).mdeg == *best) {
          c.add_entry(l, {k, a->to, a->sign, Monomial::of(a->var)});
        }
      }
    }
  }
  return c;
}

/// Column blocks b_i of a multidegree: b_i = { j : x_ij divides mu }.
inline std::vector<ColumnSet> decode_blocks(const Monomial& mu, int n) {
  std::vector<ColumnSet> b(n);
  for (const auto& [v, e] : mu.terms()) {
    if (v.row < 1 || v.row > n) throw Error(ErrorCode::InvalidArgument, "row out of range");
    b[v.row - 1].push_back(v.col);
  }
  return b;
}

/// Consecutive-chunk blocks: b_i is the next alpha_i + 1 entries of I.
inline std::vector<ColumnSet> chunk_blocks(const ENBasisElement& e) {
  std::vector<ColumnSet> b;
  std::size_t pos = 0;
  for (int a : e.alpha) {
    b.emplace_back(e.columns.begin() + static_cast<long>(pos), e.columns.begin() + static_cast<long>(pos + a + 1));
    pos += a + 1;
  }
  return b;
}

/// Check every entry of a sparse EN complex against the closed form
/// d(g^(alpha) f_I) = sum_{i in Supp alpha, j in b_i} sgn(j in I) x_ij g^(alpha - e_i) f_{I \ j},
/// with blocks read off the multidegree, f_I -> in([I]), and each multidegree
/// equal to the lcm of the multidegrees in the support of its image.
inline bool verify_differential_formula(const BasedComplex& e, const TermOrder& order) {
  const int n = order.rows();
  if (e.rank(0) != 1 || e.element(0, 0).label != kUnitLabel) return false;
  for (std::size_t k = 0; k < e.rank(1); ++k) {
    const auto el = ENBasisElement::parse(e.element(1, k).label);
    const SignedTerm lead = initial_term(order, el.columns);
    std::vector<const DiffEntry*> out;
    for (const auto& d : e.differential(1)) {
      if (d.from == k) out.push_back(&d);
    }
    if (out.size() != 1 || out[0]->coeff != lead.monomial || out[0]->sign != lead.sign ||
        e.element(1, k).mdeg != lead.monomial) {
      return false;
    }
  }
  for (int l = 2; l <= e.top_degree(); ++l) {
    std::vector<std::set<std::tuple<std::string, int, Monomial>>> actual(e.rank(l));
    for (const auto& d : e.differential(l)) {
      actual[d.from].insert({e.element(l - 1, d.to).label, d.sign, d.coeff});
    }
    for (std::size_t k = 0; k < e.rank(l); ++k) {
      const auto& be = e.element(l, k);
      const auto el = ENBasisElement::parse(be.label);
      const auto blocks = decode_blocks(be.mdeg, n);
      ColumnSet all;
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(blocks[i].size()) != el.alpha[i] + 1) return false;
        all.insert(all.end(), blocks[i].begin(), blocks[i].end());
      }
      std::sort(all.begin(), all.end());
      if (all != el.columns) return false;
      std::set<std::tuple<std::string, int, Monomial>> expected;
      for (int i = 0; i < n; ++i) {
        if (el.alpha[i] == 0) continue;
        for (int j : blocks[i]) {
          const auto pos = std::find(el.columns.begin(), el.columns.end(), j) - el.columns.begin();
          ENBasisElement target = el;
          --target.alpha[i];
          target.columns.erase(target.columns.begin() + pos);
          expected.insert({target.label(), (pos % 2 == 0) ? 1 : -1, Monomial::of(grid_var(i + 1, j))});
        }
      }
      if (expected != actual[k]) return false;
      Monomial l_cm;
      for (const auto& d : e.differential(l)) {
        if (d.from == k) l_cm = lcm(l_cm, e.element(l - 1, d.to).mdeg);
      }
      if (l_cm != be.mdeg) return false;
    }
  }
  return true;
}

/// Is mu = x_{1 b_1} ... x_{n b_n} (disjoint nonempty blocks) such that every
/// rainbow selection is a generator of `gens`?
inline bool is_valid_multidegree(const Monomial& mu, int n, const std::set<Monomial>& gens) {
  if (!mu.is_squarefree()) return false;
  const auto blocks = decode_blocks(mu, n);
  std::set<int> seen;
  for (const auto& b : blocks) {
    if (b.empty()) return false;
    for (int j : b) {
      if (!seen.insert(j).second) return false;
    }
  }
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<Monomial::Term> t;
    for (int i = 0; i < n; ++i) t.push_back({grid_var(i + 1, blocks[i][pick[i]]), 1});
    if (!gens.count(Monomial(std::move(t)))) return false;
    int i = n - 1;
    while (i >= 0 && ++pick[i] == blocks[i].size()) pick[i--] = 0;
    if (i < 0) return true;
  }
}

/// Every degree n + l - 1 rainbow-block monomial all of whose rainbow
/// selections are initial terms of maximal minors.
inline std::vector<Monomial> valid_multidegrees(const TermOrder& order, int l) {
  const int n = order.rows(), m = order.cols();
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "homological degree must be >= 1");
  const auto ideal = initial_ideal_maximal_minors(VariableMatrix(n, m), order);
  const std::set<Monomial> gens(ideal.generators().begin(), ideal.generators().end());
  std::vector<Monomial> out;
  std::vector<int> row_of(m, 0);  // 0 = unused
  auto go = [&](auto&& self, int col, int used) -> void {
    if (used > n + l - 1) return;
    if (col == m) {
      if (used != n + l - 1) return;
      std::vector<Monomial::Term> t;
      for (int j = 0; j < m; ++j) {
        if (row_of[j]) t.push_back({grid_var(row_of[j], j + 1), 1});
      }
      Monomial mu(std::move(t));
      if (is_valid_multidegree(mu, n, gens)) out.push_back(std::move(mu));
      return;
    }
    for (int r = 0; r <= n; ++r) {
      row_of[col] = r;
      self(self, col + 1, used + (r ? 1 : 0));
    }
    row_of[col] = 0;
  };
  go(go, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// The degree-l multidegrees of the sparse EN complex are exactly the valid
/// multidegrees, each appearing once.
inline bool verify_multidegree_bijection(const BasedComplex& e, const TermOrder& order, int l) {
  std::vector<Monomial> got;
  for (const auto& b : e.basis(l)) got.push_back(b.mdeg);
  std::sort(got.begin(), got.end());
  if (std::adjacent_find(got.begin(), got.end()) != got.end()) return false;
  return got == valid_multidegrees(order, l);
}

inline bool verify_multidegree_bijection(const TermOrder& order, int l) {
  return verify_multidegree_bijection(sparse_en(order), order, l);
}

/// Double-swap closure of G(in I_n): if mu x_ib / x_ia_i and mu x_jc / x_ja_j
/// are generators (i != j, b != c) then so is the double swap. Swept over
/// every generator mu.
inline bool semimodularity_witness(const TermOrder& order) {
  const int n = order.rows(), m = order.cols();
  const auto ideal = initial_ideal_maximal_minors(VariableMatrix(n, m), order);
  const std::set<Monomial> gens(ideal.generators().begin(), ideal.generators().end());
  auto swap = [](const Monomial& mu, int row, int col) {
    std::vector<Monomial::Term> t;
    for (const auto& [v, e] : mu.terms()) t.push_back({v.row == row ? grid_var(row, col) : v, e});
    return Monomial(std::move(t));
  };
  for (const auto& mu : gens) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (int b = 1; b <= m; ++b) {
          if (!gens.count(swap(mu, i, b))) continue;
          for (int c = 1; c <= m; ++c) {
            if (c == b || !gens.count(swap(mu, j, c))) continue;
            if (!gens.count(swap(swap(mu, i, b), j, c))) return false;
          }
        }
      }
    }
  }
  return true;
}

/// For generators mu < nu whose lcm is a valid multidegree, some single
/// row swap of nu toward mu is a generator smaller than nu.
inline bool atom_order_witness(const TermOrder& order) {
  const int n = order.rows(), m = order.cols();
  const auto ideal = initial_ideal_maximal_minors(VariableMatrix(n, m), order);
  const std::set<Monomial> gens(ideal.generators().begin(), ideal.generators().end());
  auto col_in_row = [](const Monomial& mu, int row) {
    for (const auto& [v, e] : mu.terms()) {
      if (v.row == row) return v.col;
    }
    return 0;
  };
  for (const auto& mu : gens) {
    for (const auto& nu : gens) {
      if (!order.less(mu, nu) || !is_valid_multidegree(lcm(mu, nu), n, gens)) continue;
      bool found = false;
      for (int i = 1; i <= n && !found; ++i) {
        std::vector<Monomial::Term> t;
        for (const auto& [v, e] : nu.terms()) t.push_back({v.row == i ? grid_var(i, col_in_row(mu, i)) : v, e});
        const Monomial swapped(std::move(t));
        found = gens.count(swapped) && order.less(swapped, nu);
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace rainbow
