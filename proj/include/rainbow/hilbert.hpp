#pragma once

// Truncated Hilbert functions of quotients by homogeneous ideals, and the
// (1 - t) test for regular sequences of linear forms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/ideal.hpp"
#include "rainbow/linalg.hpp"
#include "rainbow/monomial.hpp"

namespace rainbow {

/// Polynomial with integer coefficients (reduced modulo p on use).
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Monomial& m, std::int64_t c = 1) {  // NOLINT(google-explicit-constructor)
    if (c) terms_[m] = c;
  }

  static Polynomial difference(Variable a, Variable b) {
    Polynomial p(Monomial::of(a));
    p.add(Monomial::of(b), -1);
    return p;
  }

  void add(const Monomial& m, std::int64_t c) {
    if ((terms_[m] += c) == 0) terms_.erase(m);
  }

  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Common degree of all terms; nullopt for zero, throws if mixed.
  std::optional<std::uint32_t> degree() const {
    if (terms_.empty()) return std::nullopt;
    const auto d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) {
      if (m.degree() != d) throw Error(ErrorCode::NotHomogeneous, "inhomogeneous polynomial");
    }
    return d;
  }

  Polynomial operator*(const Monomial& m) const {
    Polynomial r;
    for (const auto& [t, c] : terms_) r.terms_[t * m] = c;
    return r;
  }

 private:
  std::map<Monomial, std::int64_t> terms_;
};

/// All monomials of degree d in the given variables.
inline std::vector<Monomial> monomials_of_degree(const std::vector<Variable>& vars, std::uint32_t d) {
  std::vector<Monomial> out;
  std::vector<Monomial::Term> acc;
  auto go = [&](auto&& self, std::size_t first, std::uint32_t left) -> void {
    if (left == 0) {
      out.emplace_back(acc);
      return;
    }
    for (std::size_t v = first; v < vars.size(); ++v) {
      for (std::uint32_t e = left; e >= 1; --e) {
        acc.push_back({vars[v], e});
        self(self, v + 1, left - e);
        acc.pop_back();
      }
    }
  };
  go(go, 0, d);
  return out;
}

/// dim_k (R/(gens))_d for d = 0..D, where R = k[vars], by row reduction of
/// { m * f } in each degree.
inline std::vector<std::int64_t> hilbert_function(const std::vector<Polynomial>& gens,
                                                  const std::vector<Variable>& vars, int max_degree,
                                                  const PrimeField& field = PrimeField()) {
  std::vector<std::pair<std::uint32_t, const Polynomial*>> hom;
  for (const auto& g : gens) {
    if (auto d = g.degree()) hom.push_back({*d, &g});
  }
  std::vector<std::int64_t> hf;
  for (int d = 0; d <= max_degree; ++d) {
    const auto basis = monomials_of_degree(vars, static_cast<std::uint32_t>(d));
    std::map<Monomial, std::size_t> col;
    for (std::size_t i = 0; i < basis.size(); ++i) col.emplace(basis[i], i);
    std::vector<Polynomial> rows;
    for (const auto& [gd, g] : hom) {
      if (gd > static_cast<std::uint32_t>(d)) continue;
      for (const auto& m : monomials_of_degree(vars, d - gd)) rows.push_back(*g * m);
    }
    IntMatrix mat(rows.size(), basis.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [m, c] : rows[r].terms()) {
        auto it = col.find(m);
        if (it == col.end()) throw Error(ErrorCode::InvalidArgument, "generator uses a variable outside the ring");
        mat.add(r, it->second, c);
      }
    }
    hf.push_back(static_cast<std::int64_t>(basis.size() - rank(mat, field)));
  }
  return hf;
}

namespace detail {

using TPoly = std::vector<std::int64_t>;

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
  TPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline TPoly tpoly_add(TPoly a, const TPoly& b, std::size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
  return a;
}

/// Numerator N(t) of the Hilbert series N(t)/(1-t)^v of R/I for a monomial
/// ideal, via the pivot recursion N(I) = N(I + (x)) + t N(I : x).
inline TPoly hilbert_numerator(const MonomialIdeal& ideal) {
  const auto& g = ideal.generators();
  if (g.empty()) return {1};
  if (ideal.is_unit()) return {0};
  std::map<Variable, int> freq;
  bool coprime = true;
  for (const auto& m : g) {
    for (const auto& [v, e] : m.terms()) {
      if (++freq[v] > 1) coprime = false;
    }
  }
  if (coprime) {
    TPoly n{1};
    for (const auto& m : g) {
      TPoly f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] = -1;
      n = tpoly_mul(n, f);
    }
    return n;
  }
  const Variable pivot =
      std::max_element(freq.begin(), freq.end(), [](auto& a, auto& b) { return a.second < b.second; })->first;
  const Monomial x = Monomial::of(pivot);
  std::vector<Monomial> rest;
  for (const auto& m : g) {
    if (!x.divides(m)) rest.push_back(m);
  }
  // I + (x) = (x) + (generators free of x), x coprime to the rest.
  TPoly with_x = tpoly_mul({1, -1}, hilbert_numerator(MonomialIdeal(std::move(rest))));
  return tpoly_add(std::move(with_x), hilbert_numerator(colon(ideal, x)), 1);
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Hilbert function of R/I for a monomial ideal I in num_vars variables
/// (the variables of I must be among them).
inline std::vector<std::int64_t> monomial_hilbert_function(const MonomialIdeal& ideal, std::size_t num_vars,
                                                           int max_degree) {
  if (ideal.variables().size() > num_vars) {
    throw Error(ErrorCode::InvalidArgument, "ideal uses more variables than the ring has");
  }
  const auto n = detail::hilbert_numerator(ideal);
  std::vector<std::int64_t> hf;
  const auto v = static_cast<std::int64_t>(num_vars);
  for (int d = 0; d <= max_degree; ++d) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < n.size() && static_cast<int>(k) <= d; ++k) {
      const std::int64_t free = d - static_cast<std::int64_t>(k);
      s += n[k] * (v == 0 ? (free == 0 ? 1 : 0) : detail::binomial(free + v - 1, v - 1));
    }
    hf.push_back(s);
  }
  return hf;
}

/// A linear form a - b, or the single variable a when b is absent.
struct LinearForm {
  Variable a;
  std::optional<Variable> b;

  static LinearForm difference(Variable x, Variable y) { return {x, y}; }
  static LinearForm variable(Variable x) { return {x, std::nullopt}; }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// R/(I + forms) as a monomial quotient: each difference identifies two
/// variables and each lone variable is set to zero, so the quotient is a
/// polynomial ring on the surviving classes modulo the image of I.
class IdentifiedQuotient {
 public:
  IdentifiedQuotient(const MonomialIdeal& ideal, std::vector<Variable> ring) : ideal_(ideal), ring_(std::move(ring)) {
    std::sort(ring_.begin(), ring_.end());
    ring_.erase(std::unique(ring_.begin(), ring_.end()), ring_.end());
    parent_.resize(ring_.size() + 1);  // last slot is the zero class
    std::iota(parent_.begin(), parent_.end(), 0);
    for (const auto& v : ideal_.variables()) index(v);
  }

  void impose(const LinearForm& f) {
    const std::size_t a = index(f.a);
    const std::size_t b = f.b ? index(*f.b) : ring_.size();
    unite(a, b);
  }

  std::size_t num_free_variables() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < ring_.size(); ++i) {
      if (find(i) == i && find(i) != find(ring_.size())) ++c;
    }
    return c;
  }

  MonomialIdeal image() const {
    std::vector<Monomial> out;
    for (const auto& g : ideal_.generators()) {
      std::vector<Monomial::Term> t;
      bool zero = false;
      for (const auto& [v, e] : g.terms()) {
        const std::size_t r = find(index_of(v));
        if (r == find(ring_.size())) {
          zero = true;
          break;
        }
        t.push_back({plain_var(static_cast<int>(r) + 1), e});
      }
      if (!zero) out.emplace_back(std::move(t));
    }
    return MonomialIdeal(std::move(out));
  }

  std::vector<std::int64_t> hilbert_function(int max_degree) const {
    return monomial_hilbert_function(image(), num_free_variables(), max_degree);
  }

 private:
  std::size_t index_of(Variable v) const {
    auto it = std::lower_bound(ring_.begin(), ring_.end(), v);
    if (it == ring_.end() || *it != v) {
      throw Error(ErrorCode::InvalidArgument, "variable " + v.to_string() + " is not in the ring");
    }
    return static_cast<std::size_t>(it - ring_.begin());
  }
  std::size_t index(Variable v) const { return index_of(v); }
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // the zero class stays a root so it is recognisable
    if (a == ring_.size()) std::swap(a, b);
    parent_[a] = b;
  }

  MonomialIdeal ideal_;
  std::vector<Variable> ring_;
  std::vector<std::size_t> parent_;
};

/// sigma is a regular sequence on R/I (up to degree D) iff every prefix
/// quotient has Hilbert function equal to the previous one times (1 - t).
inline bool verify_regular_sequence(const MonomialIdeal& ideal, const std::vector<Variable>& ring,
                                    const std::vector<LinearForm>& sigma, int max_degree) {
  IdentifiedQuotient q(ideal, ring);
  auto prev = q.hilbert_function(max_degree);
  for (const auto& f : sigma) {
    q.impose(f);
    const auto cur = q.hilbert_function(max_degree);
    for (int d = 0; d <= max_degree; ++d) {
      const std::int64_t expect = prev[d] - (d > 0 ? prev[d - 1] : 0);
      if (cur[d] != expect) return false;
    }
    prev = cur;
  }
  return true;
}

}  // namespace rainbow
