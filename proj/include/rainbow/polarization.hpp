#pragma once

// Free vertices and free sequences, the grade criterion for linearity of
// rainbow DFIs, their Betti tables, and polarizations via Alexander duality.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "rainbow/betti.hpp"
#include "rainbow/complex.hpp"
#include "rainbow/determinantal.hpp"
#include "rainbow/error.hpp"
#include "rainbow/face_poset.hpp"
#include "rainbow/hilbert.hpp"
#include "rainbow/ideal.hpp"
#include "rainbow/sparse_en.hpp"
#include "rainbow/strand_restriction.hpp"

namespace rainbow {

/// Rank-1 elements of P lying below exactly one maximal element.
inline std::vector<std::size_t> free_vertices(const FacePoset& p) {
  std::vector<std::size_t> maximal;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p.upper_covers(x).empty() && p.rank(x) >= 1) maximal.push_back(x);
  }
  std::vector<std::size_t> out;
  for (std::size_t v : p.of_rank(1)) {
    std::size_t hits = 0;
    for (std::size_t f : maximal) hits += p.leq(v, f);
    if (hits == 1) out.push_back(v);
  }
  return out;
}

namespace detail {

/// Number of maximal faces of c (by vertex set) containing each vertex.
inline std::vector<std::size_t> facet_counts(const BasedComplex& c) {
  if (c.top_degree() < 1) return {};
  const auto verts = vertex_sets(c);
  std::vector<std::size_t> count(c.rank(1), 0);
  for (int i = 1; i <= c.top_degree(); ++i) {
    std::vector<bool> covered(c.rank(i), false);
    if (i < c.top_degree()) {
      for (const auto& e : c.differential(i + 1)) covered[e.to] = true;
    }
    for (std::size_t k = 0; k < c.rank(i); ++k) {
      if (covered[k]) continue;
      for (std::size_t w : verts[i][k]) ++count[w];
    }
  }
  return count;
}

}  // namespace detail

struct FreeSequenceReport {
  std::vector<std::string> targets;                 // multidegrees of the target vertices
  std::optional<std::vector<std::string>> ordering;  // nullopt: none exists
  std::vector<std::size_t> step_counts;              // facets containing each vertex at its turn

  bool found() const { return ordering.has_value(); }

  nlohmann::json to_json() const {
    nlohmann::json j{{"targets", targets}, {"found", found()}, {"step_counts", step_counts}};
    j["ordering"] = ordering ? nlohmann::json(*ordering) : nlohmann::json(nullptr);
    return j;
  }
};

/// Search for an ordering of the target vertices (indices into degree 1 of
/// c) in which each is free once its predecessors are deleted. Deletion is
/// restriction to the remaining vertices.
inline FreeSequenceReport find_free_sequence(const BasedComplex& c, const std::vector<std::size_t>& targets) {
  FreeSequenceReport report;
  std::vector<std::size_t> t(targets);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.size() > 63) throw Error(ErrorCode::SizeCap, "more than 63 target vertices");
  for (std::size_t w : t) {
    detail::require_vertex(c, w);
    report.targets.push_back(c.element(1, w).mdeg.to_string());
  }
  const std::size_t nv = c.top_degree() >= 1 ? c.rank(1) : 0;

  std::unordered_set<std::uint64_t> dead;  // remaining-target sets known to fail
  std::vector<std::size_t> order, counts;
  auto go = [&](auto&& self, std::uint64_t left, const std::vector<bool>& alive) -> bool {
    if (left == 0) return true;
    if (dead.count(left)) return false;
    std::vector<std::size_t> keep;
    for (std::size_t w = 0; w < nv; ++w) {
      if (alive[w]) keep.push_back(w);
    }
    const BasedComplex sub = induced_subcomplex(c, keep);
    const auto count = detail::facet_counts(sub);
    // positions of the original vertices inside sub
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k;
    // free candidates first; ties broken by how many other targets share
    // their unique facet (fewest first)
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (!(left >> b & 1u)) continue;
      if (count[pos.at(t[b])] != 1) continue;
      std::size_t pressure = 0;
      for (std::size_t o = 0; o < t.size(); ++o) {
        if (o != b && (left >> o & 1u) && count[pos.at(t[o])] == 1) ++pressure;
      }
      cand.push_back({pressure, b});
    }
    std::sort(cand.begin(), cand.end());
    for (const auto& [pressure, b] : cand) {
      std::vector<bool> next(alive);
      next[t[b]] = false;
      order.push_back(t[b]);
      counts.push_back(1);
      if (self(self, left & ~(std::uint64_t{1} << b), next)) return true;
      order.pop_back();
      counts.pop_back();
    }
    dead.insert(left);
    return false;
  };
  const std::uint64_t all = t.empty() ? 0 : (~std::uint64_t{0} >> (64 - t.size()));
  if (go(go, all, std::vector<bool>(nv, true))) {
    std::vector<std::string> names;
    for (std::size_t w : order) names.push_back(c.element(1, w).mdeg.to_string());
    report.ordering = std::move(names);
    report.step_counts = std::move(counts);
  }
  return report;
}

/// Replays a reported ordering: each vertex must lie in exactly one facet
/// of what remains when its turn comes.
inline bool replay_free_sequence(const BasedComplex& c, const std::vector<std::string>& ordering) {
  std::vector<std::size_t> keep;
  for (std::size_t w = 0; c.top_degree() >= 1 && w < c.rank(1); ++w) keep.push_back(w);
  for (const auto& name : ordering) {
    const BasedComplex sub = induced_subcomplex(c, keep);
    const auto count = detail::facet_counts(sub);
    auto it = std::find_if(keep.begin(), keep.end(),
                           [&](std::size_t w) { return c.element(1, w).mdeg.to_string() == name; });
    if (it == keep.end() || count[it - keep.begin()] != 1) return false;
    keep.erase(it);
  }
  return true;
}

/// Vertices of sparse_en(order) belonging to the facets of a pure complex.
inline std::vector<std::size_t> facet_vertices(const BasedComplex& e, const PureComplex& delta, const TermOrder& order) {
  std::set<Monomial> wanted;
  for (const auto& a : delta.facets()) wanted.insert(initial_minor(order, a));
  return vertices_with_degrees(e, wanted);
}

namespace detail {

inline void require_setup(const PureComplex& dual) {
  if (!overlap_condition(dual)) {
    throw Error(ErrorCode::SetupViolated, "two facets of the dual complex share n - 1 columns");
  }
}

}  // namespace detail

/// rain(J_Delta) is linear iff every colon by a generator of rain(J_dual)
/// has codimension m - n (only under the overlap condition on the dual).
inline bool linearity_criterion(const PureComplex& delta, const TermOrder& order) {
  const PureComplex dual = alexander_dual_complex(delta);
  detail::require_setup(dual);
  const MonomialIdeal j = rainbow_dfi(delta, order);
  const int target = delta.m() - delta.n();
  for (const auto& a : dual.facets()) {
    if (codimension(colon(j, initial_minor(order, a))) != target) return false;
  }
  return true;
}

/// Betti table of R/rain(J_Delta) with r = |dual| under the overlap
/// condition: 1 in degree 0, then row n - 1 with
/// C(n+l-2, l-1) C(m, n+l-1) - r C(m-n, l-1) in homological degree l.
inline CoarseBettiTable betti_table_formula(int n, int m, int r) {
  if (n < 1 || m < n || r < 0) throw Error(ErrorCode::InvalidArgument, "need 1 <= n <= m and r >= 0");
  CoarseBettiTable t;
  t.entries[{0, 0}] = 1;
  for (int l = 1; l <= m - n + 1; ++l) {
    const std::int64_t v = detail::binomial(n + l - 2, l - 1) * detail::binomial(m, n + l - 1) -
                           static_cast<std::int64_t>(r) * detail::binomial(m - n, l - 1);
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "r exceeds the number of minors");
    if (v > 0) t.entries[{l, n - 1 + l}] = static_cast<std::size_t>(v);
  }
  return t;
}

/// x_{1j} - x_{ij} for i = 2..n and j = 1..m.
inline std::vector<LinearForm> column_differences(int n, int m) {
  std::vector<LinearForm> s;
  for (int j = 1; j <= m; ++j) {
    for (int i = 2; i <= n; ++i) s.push_back(LinearForm::difference(grid_var(1, j), grid_var(i, j)));
  }
  return s;
}

struct RegularityCheck {
  bool by_grade = false;    // the colon criterion
  bool by_hilbert = false;  // Hilbert functions up to the degree bound
  bool agree() const { return by_grade == by_hilbert; }
};

/// Whether the column differences form a regular sequence on
/// R/rain(J_Delta), by the grade criterion and by Hilbert functions.
inline RegularityCheck variable_differences_regular(const PureComplex& delta, const TermOrder& order,
                                                    int max_degree = -1) {
  RegularityCheck r;
  r.by_grade = linearity_criterion(delta, order);
  if (max_degree < 0) max_degree = delta.n() + delta.m();
  const VariableMatrix mat(delta.n(), delta.m());
  r.by_hilbert = verify_regular_sequence(rainbow_dfi(delta, order), mat.variables(),
                                         column_differences(delta.n(), delta.m()), max_degree);
  return r;
}

/// x_{ij} -> x_i.
inline MonomialIdeal specialize(const MonomialIdeal& ideal) {
  std::vector<Monomial> out;
  for (const auto& g : ideal.generators()) {
    std::map<int, std::uint32_t> e;
    for (const auto& [v, k] : g.terms()) e[v.row] += k;
    std::vector<Monomial::Term> t;
    for (const auto& [row, k] : e) t.push_back({plain_var(row), k});
    out.emplace_back(std::move(t));
  }
  return MonomialIdeal(std::move(out));
}

/// Exponent of the pure power of x_i in G(I), if any.
inline std::optional<std::uint32_t> pure_power(const MonomialIdeal& ideal, Variable x) {
  for (const auto& g : ideal.generators()) {
    if (g.terms().size() == 1 && g.terms().front().first == x) return g.terms().front().second;
  }
  return std::nullopt;
}

/// Contains a pure power of every variable it uses.
inline bool is_artinian(const MonomialIdeal& ideal) {
  if (ideal.is_zero() || ideal.is_unit()) return false;
  for (const auto& v : ideal.variables()) {
    if (!pure_power(ideal, v)) return false;
  }
  return true;
}

/// I = (its variables)^d for some d.
inline bool is_power_of_maximal(const MonomialIdeal& ideal) {
  if (ideal.is_zero() || ideal.is_unit()) return false;
  const auto d = ideal.generator_degree();
  if (!d) return false;
  const auto vars = ideal.variables();
  return ideal.generators() == MonomialIdeal(monomials_of_degree(vars, *d)).generators();
}

struct PolarizationReport {
  int n = 0, m = 0, r = 0;  // r = |dual|
  bool setup = false;       // overlap condition on the dual
  std::string linearity_source;
  bool linear = false;
  bool restricted = false;  // some grid variable unused by rain(J_Delta)
  std::vector<Variable> used;
  MonomialIdeal rain;
  MonomialIdeal dual_ideal;
  MonomialIdeal specialized;
  bool artinian = false;
  bool variable_counts_match = false;  // row i uses exactly m_i variables
  int degree_bound = 0;
  bool regular_sequence = false;
  bool power_of_max_by_count = false;     // |dual| == 0
  bool power_of_max_by_ideal = false;     // the specialization is a power of the maximal ideal
  bool free_sequence = false;

  bool polarization() const { return linear && artinian && variable_counts_match && regular_sequence; }

  nlohmann::json to_json() const {
    nlohmann::json used_json = nlohmann::json::array();
    for (const auto& v : used) used_json.push_back(v.to_string());
    return {{"n", n},
            {"m", m},
            {"r", r},
            {"setup", setup},
            {"linearity_source", linearity_source},
            {"linear", linear},
            {"restricted", restricted},
            {"used_variables", used_json},
            {"rain", rain.to_json()},
            {"dual", dual_ideal.to_json()},
            {"specialized", specialized.to_json()},
            {"artinian", artinian},
            {"variable_counts_match", variable_counts_match},
            {"degree_bound", degree_bound},
            {"regular_sequence", regular_sequence},
            {"free_sequence", free_sequence},
            {"power_of_max", power_of_max_by_count},
            {"power_of_max_by_ideal", power_of_max_by_ideal},
            {"polarization", polarization()}};
  }

  static std::string csv_header() { return "n,m,r,linear,free_seq,polarization,power_of_max"; }

  std::string csv_row() const {
    std::ostringstream os;
    os << n << ',' << m << ',' << r << ',' << linear << ',' << free_sequence << ',' << polarization() << ','
       << power_of_max_by_count;
    return os.str();
  }
};

/// Dualize rain(J_Delta) over the variables it uses, collapse each row to
/// one variable and check that the result is Artinian and that the row
/// differences x_{i,first} - x_{ij} form a regular sequence on the dual.
/// Linearity is the colon criterion under the overlap condition and the
/// Koszul oracle otherwise.
inline PolarizationReport certify_polarization(const PureComplex& delta, const TermOrder& order,
                                               const PrimeField& field = PrimeField()) {
  PolarizationReport rep;
  rep.n = delta.n();
  rep.m = delta.m();
  const PureComplex dual = alexander_dual_complex(delta);
  rep.r = static_cast<int>(dual.size());
  rep.setup = overlap_condition(dual);
  rep.rain = rainbow_dfi(delta, order);
  if (rep.setup) {
    rep.linearity_source = "grade";
    rep.linear = linearity_criterion(delta, order);
  } else {
    rep.linearity_source = "koszul";
    rep.linear = !rep.rain.is_zero() && has_linear_resolution(koszul_betti(rep.rain, field));
  }
  {
    const BasedComplex e = sparse_en(order);
    rep.free_sequence = find_free_sequence(e, facet_vertices(e, dual, order)).found();
  }
  rep.used = rep.rain.variables();
  rep.restricted = static_cast<int>(rep.used.size()) != rep.n * rep.m;
  rep.power_of_max_by_count = rep.r == 0;
  if (rep.rain.is_zero()) return rep;

  rep.dual_ideal = alexander_dual(rep.rain);
  rep.specialized = specialize(rep.dual_ideal);
  rep.artinian = is_artinian(rep.specialized);
  rep.power_of_max_by_ideal = is_power_of_maximal(rep.specialized);

  std::map<int, std::vector<Variable>> by_row;
  for (const auto& v : rep.dual_ideal.variables()) by_row[v.row].push_back(v);
  rep.variable_counts_match = rep.artinian;
  std::vector<LinearForm> sigma;
  int bound = 0;
  for (const auto& [row, vars] : by_row) {
    const auto mi = pure_power(rep.specialized, plain_var(row));
    if (!mi || *mi != vars.size()) rep.variable_counts_match = false;
    bound += static_cast<int>(vars.size()) - 1;
    for (std::size_t k = 1; k < vars.size(); ++k) sigma.push_back(LinearForm::difference(vars.front(), vars[k]));
  }
  rep.degree_bound = bound + 1;
  rep.regular_sequence =
      verify_regular_sequence(rep.dual_ideal, rep.dual_ideal.variables(), sigma, rep.degree_bound);
  return rep;
}

}  // namespace rainbow
