#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/error.hpp"
#include "rainbow/monomial.hpp"
#include "rainbow/packed.hpp"

namespace rainbow {

/// Monomial ideal held by its minimal generating set G(I), sorted
/// structurally so that equal ideals compare equal.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;

  explicit MonomialIdeal(std::vector<Monomial> generators) : gens_(std::move(generators)) {
    minimalize();
  }

  const std::vector<Monomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_.front().is_one(); }

  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
  }

  bool is_squarefree() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Monomial& g) { return g.is_squarefree(); });
  }

  /// Common generator degree, if all generators share one.
  std::optional<std::uint32_t> generator_degree() const {
    if (gens_.empty()) return std::nullopt;
    const auto d = gens_.front().degree();
    for (const auto& g : gens_) {
      if (g.degree() != d) return std::nullopt;
    }
    return d;
  }

  std::vector<Variable> variables() const {
    std::set<Variable> vs;
    for (const auto& g : gens_) {
      for (const auto& [v, e] : g.terms()) vs.insert(v);
    }
    return {vs.begin(), vs.end()};
  }

  MonomialIdeal operator+(const MonomialIdeal& o) const {
    std::vector<Monomial> all = gens_;
    all.insert(all.end(), o.gens_.begin(), o.gens_.end());
    return MonomialIdeal(std::move(all));
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : gens_) arr.push_back(g.to_string());
    return arr;
  }

  static MonomialIdeal from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "ideal must be a JSON array of monomials");
    std::vector<Monomial> g;
    for (const auto& s : j) {
      if (!s.is_string()) throw Error(ErrorCode::ParseError, "monomial entries must be strings");
      g.push_back(Monomial::parse(s.get<std::string>()));
    }
    return MonomialIdeal(std::move(g));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) s += ", ";
      s += gens_[i].to_string();
    }
    return s + ")";
  }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  void minimalize() {
    std::sort(gens_.begin(), gens_.end(), [](const Monomial& a, const Monomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return a < b;
    });
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    std::vector<Monomial> kept;
    for (const auto& g : gens_) {
      const bool redundant =
          std::any_of(kept.begin(), kept.end(), [&](const Monomial& k) { return k.divides(g); });
      if (!redundant) kept.push_back(g);
    }
    std::sort(kept.begin(), kept.end());
    gens_ = std::move(kept);
  }

  std::vector<Monomial> gens_;
};

/// (I : g), generated by m / gcd(m, g) over m in G(I).
inline MonomialIdeal colon(const MonomialIdeal& ideal, const Monomial& g) {
  std::vector<Monomial> out;
  out.reserve(ideal.size());
  for (const auto& m : ideal.generators()) out.push_back(*m.divide(gcd(m, g)));
  return MonomialIdeal(std::move(out));
}

namespace detail {

/// Minimum hitting set of the edge family by branch and bound.
inline int min_vertex_cover(const std::vector<Mask>& edges, int best_known) {
  int best = best_known;
  std::function<void(Mask, int)> go = [&](Mask chosen, int size) {
    if (size >= best) return;
    const Mask* pick = nullptr;
    int pick_size = 65;
    for (const Mask& e : edges) {
      if ((e & chosen) == 0 && popcount(e) < pick_size) {
        pick = &e;
        pick_size = popcount(e);
      }
    }
    if (pick == nullptr) {
      best = size;
      return;
    }
    // every remaining disjoint uncovered edge needs its own vertex
    Mask used = chosen;
    int lower = 0;
    for (const Mask& e : edges) {
      if ((e & used) == 0) {
        used |= e;
        ++lower;
      }
    }
    if (size + lower >= best) return;
    for (Mask rest = *pick; rest != 0; rest &= rest - 1) {
      go(chosen | (rest & -rest), size + 1);
    }
  };
  go(0, 0);
  return best;
}

/// Minimal transversals (Berge's incremental algorithm).
inline std::vector<Mask> minimal_transversals(const std::vector<Mask>& edges) {
  std::vector<Mask> current{0};
  for (const Mask e : edges) {
    std::vector<Mask> next;
    for (const Mask t : current) {
      if (t & e) {
        next.push_back(t);
      } else {
        for (Mask rest = e; rest != 0; rest &= rest - 1) next.push_back(t | (rest & -rest));
      }
    }
    std::sort(next.begin(), next.end(), [](Mask a, Mask b) {
      return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
    });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<Mask> minimal;
    for (const Mask t : next) {
      const bool dominated =
          std::any_of(minimal.begin(), minimal.end(), [&](Mask k) { return (k & t) == k; });
      if (!dominated) minimal.push_back(t);
    }
    current = std::move(minimal);
  }
  return current;
}

}  // namespace detail

/// Height of I: the minimum number of variables meeting the support of every
/// generator.
inline int codimension(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) return 0;
  if (ideal.is_unit()) throw Error(ErrorCode::UnitIdeal, "codimension of the unit ideal");
  std::vector<Monomial> supports;
  for (const auto& g : ideal.generators()) {
    std::vector<Monomial::Term> t;
    for (const auto& [v, e] : g.terms()) t.push_back({v, 1});
    supports.emplace_back(std::move(t));
  }
  VariableIndex index(supports);
  std::vector<Mask> edges;
  for (const auto& s : supports) edges.push_back(index.mask(s));
  return detail::min_vertex_cover(edges, static_cast<int>(index.size()) + 1);
}

namespace detail {

inline void monomials_of_degree(int n_vars, std::uint32_t d, bool squarefree, int first,
                                std::vector<Monomial::Term>& acc, std::vector<Monomial>& out) {
  if (d == 0) {
    out.emplace_back(acc);
    return;
  }
  for (int v = first; v <= n_vars; ++v) {
    const std::uint32_t max_e = squarefree ? 1 : d;
    for (std::uint32_t e = max_e; e >= 1; --e) {
      acc.push_back({plain_var(v), e});
      monomials_of_degree(n_vars, d - e, squarefree, v + 1, acc, out);
      acc.pop_back();
    }
  }
}

}  // namespace detail

/// All (squarefree) monomials of degree d in the plain ring k[x_1..x_{n_vars}].
inline std::vector<Monomial> plain_monomials(int n_vars, std::uint32_t d, bool squarefree) {
  std::vector<Monomial> out;
  std::vector<Monomial::Term> acc;
  detail::monomials_of_degree(n_vars, d, squarefree, 1, acc, out);
  return out;
}

/// Complementary ideal: all (squarefree) degree-d monomials in n_vars plain
/// variables not in G(I).
inline MonomialIdeal complementary_ideal(const MonomialIdeal& ideal, std::uint32_t d, int n_vars,
                                         bool squarefree) {
  for (const auto& g : ideal.generators()) {
    if (g.degree() != d) {
      throw Error(ErrorCode::NotEquigenerated, "generator " + g.to_string() + " is not of degree " +
                                                   std::to_string(d));
    }
  }
  std::vector<Monomial> out;
  for (auto& m : plain_monomials(n_vars, d, squarefree)) {
    if (!std::binary_search(ideal.generators().begin(), ideal.generators().end(), m)) {
      out.push_back(std::move(m));
    }
  }
  return MonomialIdeal(std::move(out));
}

/// Alexander dual of a squarefree ideal: generated by the minimal
/// transversals of the generator supports.
inline MonomialIdeal alexander_dual(const MonomialIdeal& ideal) {
  if (!ideal.is_squarefree()) {
    throw Error(ErrorCode::NotSquarefree, "Alexander dual needs a squarefree ideal");
  }
  if (ideal.is_zero()) return MonomialIdeal({Monomial()});
  if (ideal.is_unit()) return MonomialIdeal();
  VariableIndex index(ideal.generators());
  std::vector<Mask> edges;
  for (const auto& g : ideal.generators()) edges.push_back(index.mask(g));
  std::vector<Monomial> out;
  for (Mask t : detail::minimal_transversals(edges)) out.push_back(index.monomial(t));
  return MonomialIdeal(std::move(out));
}

}  // namespace rainbow
