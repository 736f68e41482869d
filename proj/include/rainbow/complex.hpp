#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "rainbow/error.hpp"
#include "rainbow/linalg.hpp"
#include "rainbow/monomial.hpp"

namespace rainbow {

struct BasisElement {
  std::string label;
  Monomial mdeg;
};

/// Entry of d_i: basis element `from` of degree i maps to sign*coeff times
/// basis element `to` of degree i-1.
struct DiffEntry {
  std::size_t from = 0;
  std::size_t to = 0;
  int sign = 1;
  Monomial coeff;
};

/// Multigraded complex of free modules with fixed bases. Degree 0 is the
/// bottom; d_i runs from degree i to degree i-1.
class BasedComplex {
 public:
  BasedComplex() = default;

  bool empty() const { return basis_.empty(); }
  /// Highest populated degree, or -1 for the empty complex.
  int top_degree() const { return static_cast<int>(basis_.size()) - 1; }

  std::size_t rank(int i) const {
    return (i >= 0 && i <= top_degree()) ? basis_[i].size() : 0;
  }

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& b : basis_) r.push_back(b.size());
    return r;
  }

  const std::vector<BasisElement>& basis(int i) const {
    static const std::vector<BasisElement> kNone;
    return (i >= 0 && i <= top_degree()) ? basis_[i] : kNone;
  }

  const std::vector<DiffEntry>& differential(int i) const {
    static const std::vector<DiffEntry> kNone;
    return (i >= 1 && i <= top_degree()) ? diff_[i] : kNone;
  }

  const BasisElement& element(int i, std::size_t k) const { return basis_.at(i).at(k); }

  /// Make degrees 0..i exist (possibly empty).
  void ensure_degree(int i) {
    while (top_degree() < i) {
      basis_.emplace_back();
      diff_.emplace_back();
      index_.emplace_back();
    }
  }

  std::size_t add_element(int degree, BasisElement e) {
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative homological degree");
    ensure_degree(degree);
    if (index_[degree].count(e.label)) {
      throw Error(ErrorCode::LabelCollision, "duplicate label " + e.label);
    }
    index_[degree].emplace(e.label, basis_[degree].size());
    basis_[degree].push_back(std::move(e));
    return basis_[degree].size() - 1;
  }

  void add_entry(int degree, DiffEntry e) {
    if (degree < 1 || degree > top_degree() || e.from >= rank(degree) || e.to >= rank(degree - 1)) {
      throw Error(ErrorCode::InvalidArgument, "differential entry out of range");
    }
    if (e.sign != 1 && e.sign != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
    diff_[degree].push_back(std::move(e));
  }

  std::optional<std::size_t> find(int degree, const std::string& label) const {
    if (degree < 0 || degree > top_degree()) return std::nullopt;
    auto it = index_[degree].find(label);
    if (it == index_[degree].end()) return std::nullopt;
    return it->second;
  }

  /// Drop trailing empty degrees.
  void trim() {
    while (!basis_.empty() && basis_.back().empty()) {
      basis_.pop_back();
      diff_.pop_back();
      index_.pop_back();
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json degrees = nlohmann::json::array();
    for (const auto& deg : basis_) {
      nlohmann::json d = nlohmann::json::array();
      for (const auto& e : deg) d.push_back({{"label", e.label}, {"mdeg", e.mdeg.to_string()}});
      degrees.push_back(std::move(d));
    }
    nlohmann::json diff = nlohmann::json::array();
    for (int i = 1; i <= top_degree(); ++i) {
      for (const auto& e : diff_[i]) {
        diff.push_back({{"from", basis_[i][e.from].label},
                        {"to", basis_[i - 1][e.to].label},
                        {"sign", e.sign},
                        {"coeff", e.coeff.to_string()}});
      }
    }
    return {{"degrees", degrees}, {"diff", diff}};
  }

  /// Inverse of to_json. Labels must be unique across the whole complex so
  /// that `from`/`to` resolve without a degree tag.
  static BasedComplex from_json(const nlohmann::json& j) {
    try {
      BasedComplex c;
      std::unordered_map<std::string, int> degree_of;
      const auto& degrees = j.at("degrees");
      for (std::size_t i = 0; i < degrees.size(); ++i) {
        c.ensure_degree(static_cast<int>(i));
        for (const auto& e : degrees[i]) {
          const auto label = e.at("label").get<std::string>();
          if (!degree_of.emplace(label, static_cast<int>(i)).second) {
            throw Error(ErrorCode::LabelCollision, "duplicate label " + label);
          }
          c.add_element(static_cast<int>(i), {label, Monomial::parse(e.at("mdeg").get<std::string>())});
        }
      }
      for (const auto& e : j.at("diff")) {
        const auto from = e.at("from").get<std::string>();
        const auto to = e.at("to").get<std::string>();
        auto fi = degree_of.find(from);
        auto ti = degree_of.find(to);
        if (fi == degree_of.end() || ti == degree_of.end() || ti->second != fi->second - 1) {
          throw Error(ErrorCode::ParseError, "bad differential entry " + from + " -> " + to);
        }
        c.add_entry(fi->second, {*c.find(fi->second, from), *c.find(ti->second, to),
                                 e.at("sign").get<int>(),
                                 Monomial::parse(e.at("coeff").get<std::string>())});
      }
      return c;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("complex JSON: ") + e.what());
    }
  }

 private:
  std::vector<std::vector<BasisElement>> basis_;
  std::vector<std::vector<DiffEntry>> diff_;
  std::vector<std::unordered_map<std::string, std::size_t>> index_;
};

/// d^2 = 0 as signed monomial sums. Throws GradingViolation when an entry
/// does not respect multidegrees.
inline bool check_complex(const BasedComplex& c) {
  for (int i = 1; i <= c.top_degree(); ++i) {
    for (const auto& e : c.differential(i)) {
      if (c.element(i, e.from).mdeg != e.coeff * c.element(i - 1, e.to).mdeg) {
        throw Error(ErrorCode::GradingViolation, "entry " + c.element(i, e.from).label + " -> " +
                                                     c.element(i - 1, e.to).label);
      }
    }
  }
  for (int i = 2; i <= c.top_degree(); ++i) {
    std::vector<std::vector<const DiffEntry*>> lower(c.rank(i - 1));
    for (const auto& e : c.differential(i - 1)) lower[e.from].push_back(&e);
    std::vector<std::vector<const DiffEntry*>> upper(c.rank(i));
    for (const auto& e : c.differential(i)) upper[e.from].push_back(&e);
    for (std::size_t s = 0; s < c.rank(i); ++s) {
      std::map<std::pair<std::size_t, Monomial>, long> sum;
      for (const DiffEntry* a : upper[s]) {
        for (const DiffEntry* b : lower[a->to]) sum[{b->to, a->coeff * b->coeff}] += a->sign * b->sign;
      }
      for (const auto& [k, v] : sum) {
        if (v != 0) return false;
      }
    }
  }
  return true;
}

/// Complex of finite-dimensional vector spaces; matrix i holds d_i with rows
/// indexed by degree i and columns by degree i-1.
struct VectorSpaceComplex {
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> maps;  // maps[0] unused

  /// Homology dimensions H_0 .. H_top over the field.
  std::vector<std::size_t> homology(const PrimeField& field) const {
    std::vector<std::size_t> rk(dims.size() + 1, 0);
    for (std::size_t i = 1; i < dims.size(); ++i) rk[i] = rank(maps[i], field);
    std::vector<std::size_t> h(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) h[i] = dims[i] - rk[i] - rk[i + 1];
    return h;
  }
};

/// Degree-alpha strand: basis elements whose multidegree divides alpha.
inline VectorSpaceComplex strand_at(const BasedComplex& c, const Monomial& alpha) {
  VectorSpaceComplex v;
  std::vector<std::vector<long>> pos(c.top_degree() + 1);
  for (int i = 0; i <= c.top_degree(); ++i) {
    pos[i].assign(c.rank(i), -1);
    std::size_t k = 0;
    for (std::size_t e = 0; e < c.rank(i); ++e) {
      if (c.element(i, e).mdeg.divides(alpha)) pos[i][e] = static_cast<long>(k++);
    }
    v.dims.push_back(k);
  }
  v.maps.resize(v.dims.size());
  for (int i = 1; i <= c.top_degree(); ++i) {
    v.maps[i] = IntMatrix(v.dims[i], v.dims[i - 1]);
    for (const auto& e : c.differential(i)) {
      if (pos[i][e.from] >= 0 && pos[i - 1][e.to] >= 0) {
        v.maps[i].add(pos[i][e.from], pos[i - 1][e.to], e.sign);
      }
    }
  }
  return v;
}

/// All lcms of nonempty subsets of `gens`.
inline std::vector<Monomial> lcm_closure(const std::vector<Monomial>& gens) {
  std::unordered_set<Monomial, MonomialHash> seen(gens.begin(), gens.end());
  std::vector<Monomial> frontier(seen.begin(), seen.end());
  std::vector<Monomial> unique_gens(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& x : frontier) {
      for (const auto& g : unique_gens) {
        Monomial y = lcm(x, g);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Monomial> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<Monomial> labels_from(const BasedComplex& c, int first_degree) {
  std::vector<Monomial> m;
  for (int i = std::max(first_degree, 0); i <= c.top_degree(); ++i) {
    for (const auto& e : c.basis(i)) m.push_back(e.mdeg);
  }
  return m;
}

}  // namespace detail

/// Acyclicity in positive degrees, checked strand by strand over the lcm
/// closure of the multidegrees in degrees >= 1.
inline bool is_resolution(const BasedComplex& c, const PrimeField& field = PrimeField()) {
  for (const auto& alpha : lcm_closure(detail::labels_from(c, 1))) {
    const auto h = strand_at(c, alpha).homology(field);
    for (std::size_t i = 1; i < h.size(); ++i) {
      if (h[i] != 0) return false;
    }
  }
  return true;
}

namespace detail {

inline bool is_unit_bottom(const BasedComplex& c) {
  return c.rank(0) == 1 && c.element(0, 0).mdeg.is_one();
}

/// Copy of c keeping, in each degree, the elements accepted by keep(i, e).
template <class Keep>
BasedComplex restrict_complex(const BasedComplex& c, Keep keep) {
  BasedComplex out;
  std::vector<std::vector<long>> pos(c.top_degree() + 1);
  for (int i = 0; i <= c.top_degree(); ++i) {
    out.ensure_degree(i);
    pos[i].assign(c.rank(i), -1);
    for (std::size_t e = 0; e < c.rank(i); ++e) {
      if (keep(i, e)) pos[i][e] = static_cast<long>(out.add_element(i, c.element(i, e)));
    }
  }
  for (int i = 1; i <= c.top_degree(); ++i) {
    for (const auto& e : c.differential(i)) {
      if (pos[i][e.from] >= 0 && pos[i - 1][e.to] >= 0) {
        out.add_entry(i, {static_cast<std::size_t>(pos[i][e.from]),
                          static_cast<std::size_t>(pos[i - 1][e.to]), e.sign, e.coeff});
      }
    }
  }
  out.trim();
  return out;
}

/// Drop degree 0 and shift everything down by one.
inline BasedComplex drop_bottom(const BasedComplex& c) {
  BasedComplex out;
  for (int i = 1; i <= c.top_degree(); ++i) {
    out.ensure_degree(i - 1);
    for (const auto& e : c.basis(i)) out.add_element(i - 1, e);
  }
  for (int i = 2; i <= c.top_degree(); ++i) {
    for (const auto& e : c.differential(i)) out.add_entry(i - 1, e);
  }
  out.trim();
  return out;
}

}  // namespace detail

/// Linear strand of a minimal graded complex. If degree 0 is a single unit
/// element (augmenting a cyclic module) it is kept and degree i >= 1 keeps
/// elements of total degree d1 + i - 1, d1 the least degree in F_1;
/// otherwise degree i keeps elements of total degree d + i, d the least
/// degree in F_0.
inline BasedComplex linear_strand(const BasedComplex& c) {
  for (int i = 1; i <= c.top_degree(); ++i) {
    for (const auto& e : c.differential(i)) {
      if (e.coeff.is_one()) {
        throw Error(ErrorCode::NotMinimal, "unit entry " + c.element(i, e.from).label + " -> " +
                                               c.element(i - 1, e.to).label);
      }
    }
  }
  if (c.empty()) return c;
  const bool cyclic = detail::is_unit_bottom(c);
  const int base = cyclic ? 1 : 0;
  if (c.rank(base) == 0) return detail::restrict_complex(c, [&](int i, std::size_t) { return cyclic && i == 0; });
  std::uint32_t d = c.element(base, 0).mdeg.degree();
  for (const auto& e : c.basis(base)) d = std::min(d, e.mdeg.degree());
  return detail::restrict_complex(c, [&](int i, std::size_t k) {
    if (i < base) return true;
    return c.element(i, k).mdeg.degree() == d + static_cast<std::uint32_t>(i - base);
  });
}

/// Criterion for a linear complex G with initial degree n to be the linear
/// strand of a module: H_i(G)_{i+n+j} = 0 for all i > 0 and j in {0, 1}.
/// A single unit element in degree 0 is treated as an augmentation and
/// dropped first. Multidegree strands depend only on the lcm of the labels
/// dividing them, so the sweep runs over the label lcm closure.
inline bool is_linear_strand_of_module(const BasedComplex& g, const PrimeField& field = PrimeField()) {
  const BasedComplex c = detail::is_unit_bottom(g) ? detail::drop_bottom(g) : g;
  if (c.empty() || c.rank(0) == 0) {
    for (int i = 0; i <= c.top_degree(); ++i) {
      if (c.rank(i) != 0) throw Error(ErrorCode::NotLinear, "empty initial degree");
    }
    return true;
  }
  const std::uint32_t n = c.element(0, 0).mdeg.degree();
  for (int i = 0; i <= c.top_degree(); ++i) {
    for (const auto& e : c.basis(i)) {
      if (e.mdeg.degree() != n + static_cast<std::uint32_t>(i)) {
        throw Error(ErrorCode::NotLinear, "element " + e.label + " is off the linear row");
      }
    }
  }
  for (const auto& beta : lcm_closure(detail::labels_from(c, 0))) {
    const std::uint32_t deg = beta.degree();
    const auto h = strand_at(c, beta).homology(field);
    for (std::size_t i = 1; i < h.size(); ++i) {
      const std::uint32_t lo = n + static_cast<std::uint32_t>(i);
      if (deg >= lo && deg <= lo + 1 && h[i] != 0) return false;
    }
  }
  return true;
}

/// Koszul complex on the given variables, in the given order. Basis labels
/// are the multidegrees; e_F maps to sum_t (-1)^(t+1) x_{F_t} e_{F \ F_t}.
inline BasedComplex koszul_complex(const std::vector<Variable>& vars) {
  const std::size_t k = vars.size();
  if (k > 20) throw Error(ErrorCode::SizeCap, "Koszul complex on more than 20 variables");
  BasedComplex c;
  c.ensure_degree(static_cast<int>(k));
  auto mono = [&](std::uint32_t mask) {
    std::vector<Monomial::Term> t;
    for (std::size_t b = 0; b < k; ++b) {
      if (mask >> b & 1u) t.push_back({vars[b], 1});
    }
    return Monomial(std::move(t));
  };
  std::vector<std::size_t> index(std::size_t{1} << k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    const Monomial m = mono(mask);
    index[mask] = c.add_element(std::popcount(mask), {m.to_string(), m});
  }
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    int t = 0;
    for (std::size_t b = 0; b < k; ++b) {
      if (!(mask >> b & 1u)) continue;
      ++t;
      const std::uint32_t sub = mask & ~(1u << b);
      c.add_entry(std::popcount(mask), {index[mask], index[sub], (t % 2 == 1) ? 1 : -1,
                                        Monomial::of(vars[b])});
    }
  }
  return c;
}

}  // namespace rainbow
