#pragma once

// Linear strands of subideals by restriction: neighbors of a vertex, support
// chains, the Q-morphism into a Koszul complex and its kernel.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rainbow/complex.hpp"
#include "rainbow/determinantal.hpp"
#include "rainbow/error.hpp"
#include "rainbow/linalg.hpp"
#include "rainbow/sparse_en.hpp"
#include "rainbow/term_order.hpp"

namespace rainbow {

/// A face of a based complex: homological degree and index in that degree.
/// Vertices live in degree 1, edges in degree 2.
struct Face {
  int degree = 0;
  std::size_t index = 0;

  friend auto operator<=>(const Face&, const Face&) = default;
};

namespace detail {

/// Vertex sets (indices into degree 1) of every face, degree by degree.
inline std::vector<std::vector<std::vector<std::size_t>>> vertex_sets(const BasedComplex& c) {
  std::vector<std::vector<std::vector<std::size_t>>> v(c.top_degree() + 1);
  for (int i = 0; i <= c.top_degree(); ++i) v[i].resize(c.rank(i));
  if (c.top_degree() >= 1) {
    for (std::size_t k = 0; k < c.rank(1); ++k) v[1][k] = {k};
  }
  for (int i = 2; i <= c.top_degree(); ++i) {
    for (const auto& e : c.differential(i)) {
      auto& s = v[i][e.from];
      s.insert(s.end(), v[i - 1][e.to].begin(), v[i - 1][e.to].end());
    }
    for (auto& s : v[i]) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
  }
  return v;
}

inline bool has(const std::vector<std::size_t>& sorted, std::size_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline void require_vertex(const BasedComplex& c, std::size_t v) {
  if (c.top_degree() < 1 || v >= c.rank(1)) {
    throw Error(ErrorCode::InvalidArgument, "vertex index " + std::to_string(v) + " out of range");
  }
}

}  // namespace detail

/// Neighborhood of a vertex v: the vertices joined to v by an edge, each
/// with label x_w = m_{v,w} / m_v, sorted ascending by the term order on
/// labels.
struct CWVertexContext {
  std::size_t vertex = 0;
  Monomial mv;
  std::vector<std::size_t> neighbors;
  std::vector<Variable> labels;     // parallel to neighbors
  std::vector<std::size_t> edges;   // the degree-2 element joining v and neighbors[t]

  /// Position of w among the neighbors, or -1.
  int position(std::size_t w) const {
    auto it = std::find(neighbors.begin(), neighbors.end(), w);
    return it == neighbors.end() ? -1 : static_cast<int>(it - neighbors.begin());
  }
};

inline CWVertexContext neighbors(const BasedComplex& c, std::size_t v, const TermOrder& order) {
  detail::require_vertex(c, v);
  CWVertexContext ctx;
  ctx.vertex = v;
  ctx.mv = c.element(1, v).mdeg;
  struct Entry {
    std::size_t w, edge;
    Variable x;
  };
  std::vector<Entry> found;
  if (c.top_degree() >= 2) {
    std::map<std::size_t, std::vector<std::size_t>> ends;
    for (const auto& e : c.differential(2)) ends[e.from].push_back(e.to);
    for (const auto& [edge, to] : ends) {
      if (std::find(to.begin(), to.end(), v) == to.end()) continue;
      if (to.size() != 2) throw Error(ErrorCode::NotLinear, "edge " + c.element(2, edge).label + " is not a 1-cell");
      const std::size_t w = to[0] == v ? to[1] : to[0];
      const auto q = c.element(2, edge).mdeg.divide(ctx.mv);
      if (!q || q->degree() != 1) {
        throw Error(ErrorCode::NotLinear, "edge " + c.element(2, edge).label + " has a non-linear coefficient at v");
      }
      found.push_back({w, edge, q->terms().front().first});
    }
  }
  std::sort(found.begin(), found.end(), [&](const Entry& a, const Entry& b) {
    const auto cmp = order.compare(Monomial::of(a.x), Monomial::of(b.x));
    return cmp != 0 ? cmp < 0 : a.w < b.w;
  });
  for (const auto& f : found) {
    ctx.neighbors.push_back(f.w);
    ctx.labels.push_back(f.x);
    ctx.edges.push_back(f.edge);
  }
  return ctx;
}

/// P = P_n > P_{n-1} > ... > P_0 = v with P_i meeting N_v in its i largest
/// elements of V(P) cap N_v. signs[t] is the incidence sign of faces[t+1] in
/// faces[t].
struct SupportChain {
  std::vector<Face> faces;
  std::vector<int> signs;
};

inline int chain_sign(const SupportChain& chain) {
  int s = 1;
  for (int x : chain.signs) s *= x;
  return s;
}

namespace detail {

/// Precomputed data shared by the chain, sign and morphism routines.
class VertexView {
 public:
  VertexView(const BasedComplex& c, std::size_t v, const TermOrder& order)
      : c_(c), ctx_(neighbors(c, v, order)), verts_(vertex_sets(c)) {}

  const CWVertexContext& context() const { return ctx_; }
  const std::vector<std::size_t>& vertices(const Face& f) const { return verts_.at(f.degree).at(f.index); }
  bool contains_v(const Face& f) const { return f.degree >= 1 && has(vertices(f), ctx_.vertex); }

  /// V(P) cap N_v as positions in the neighbor order, ascending.
  std::vector<int> neighbor_positions(const Face& f) const {
    std::vector<int> out;
    for (std::size_t w : vertices(f)) {
      const int p = ctx_.position(w);
      if (p >= 0) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The unique codimension-1 face of f through v whose vertex set avoids
  /// w. Faces not through v are skipped: a square has two edges missing any
  /// given corner.
  std::pair<Face, int> face_avoiding(const Face& f, std::size_t w) const {
    std::optional<std::pair<Face, int>> hit;
    for (const auto& e : c_.differential(f.degree)) {
      if (e.from != f.index) continue;
      const Face q{f.degree - 1, e.to};
      if (!contains_v(q) || has(vertices(q), w)) continue;
      if (hit) throw Error(ErrorCode::NotSupported, "two facets of " + label(f) + " avoid the same vertex");
      hit = {q, e.sign};
    }
    if (!hit) throw Error(ErrorCode::NotSupported, "no facet of " + label(f) + " avoids the vertex");
    return *hit;
  }

  const std::string& label(const Face& f) const { return c_.element(f.degree, f.index).label; }

  SupportChain chain(const Face& p) const {
    if (!contains_v(p)) throw Error(ErrorCode::NotSupported, "vertex is not in the face " + label(p));
    const auto pos = neighbor_positions(p);
    const int n = p.degree - 1;
    if (static_cast<int>(pos.size()) != n) {
      throw Error(ErrorCode::NotSupported, "face " + label(p) + " is not maximally supported on the vertex");
    }
    SupportChain ch;
    ch.faces.push_back(p);
    Face cur = p;
    for (int t = 0; t < n; ++t) {
      auto [q, s] = face_avoiding(cur, ctx_.neighbors[pos[t]]);
      ch.faces.push_back(q);
      ch.signs.push_back(s);
      cur = q;
    }
    return ch;
  }

 private:
  const BasedComplex& c_;
  CWVertexContext ctx_;
  std::vector<std::vector<std::vector<std::size_t>>> verts_;
};

}  // namespace detail

inline SupportChain support_chain(const BasedComplex& c, const Face& p, std::size_t v, const TermOrder& order) {
  detail::require_vertex(c, v);
  if (p.degree < 1 || p.degree > c.top_degree() || p.index >= c.rank(p.degree)) {
    throw Error(ErrorCode::InvalidArgument, "face out of range");
  }
  return detail::VertexView(c, v, order).chain(p);
}

/// Every face containing v meets N_v in exactly dim(P) vertices.
inline bool maximal_support_holds(const BasedComplex& c, std::size_t v, const TermOrder& order) {
  const detail::VertexView view(c, v, order);
  for (int i = 1; i <= c.top_degree(); ++i) {
    for (std::size_t k = 0; k < c.rank(i); ++k) {
      const Face f{i, k};
      if (view.contains_v(f) && static_cast<int>(view.neighbor_positions(f).size()) != i - 1) return false;
    }
  }
  return true;
}

/// For every face P containing v and the facet Q avoiding the i-th
/// neighbor: eps(Q, P) c(Q) = (-1)^(i+1) c(P).
inline bool sign_lemma_holds(const BasedComplex& c, std::size_t v, const TermOrder& order) {
  const detail::VertexView view(c, v, order);
  for (int i = 2; i <= c.top_degree(); ++i) {
    for (std::size_t k = 0; k < c.rank(i); ++k) {
      const Face p{i, k};
      if (!view.contains_v(p)) continue;
      const int cp = chain_sign(view.chain(p));
      const auto pos = view.neighbor_positions(p);
      for (std::size_t t = 0; t < pos.size(); ++t) {
        const auto [q, eps] = view.face_avoiding(p, view.context().neighbors[pos[t]]);
        const int expect = (t % 2 == 0) ? cp : -cp;
        if (eps * chain_sign(view.chain(q)) != expect) return false;
      }
    }
  }
  return true;
}

/// No two faces share a vertex set.
inline bool face_supports_injective(const BasedComplex& c) {
  std::set<std::vector<std::size_t>> seen;
  const auto verts = detail::vertex_sets(c);
  for (int i = 1; i <= c.top_degree(); ++i) {
    for (const auto& s : verts[i]) {
      if (!seen.insert(s).second) return false;
    }
  }
  return true;
}

struct QEntry {
  std::size_t from;  // index in F_l
  std::size_t to;    // index in K_{l-1}
  int sign;
};

/// Q : F_l -> K_{l-1}, e_P -> c(P) e_{V(P) cap N_v} when v in V(P).
struct QMorphism {
  CWVertexContext context;
  BasedComplex koszul;
  std::vector<std::vector<QEntry>> maps;  // maps[l] for l >= 1
};

inline QMorphism q_morphism(const BasedComplex& c, std::size_t v, const TermOrder& order) {
  detail::require_vertex(c, v);
  const detail::VertexView view(c, v, order);
  QMorphism q;
  q.context = view.context();
  {
    std::set<Variable> distinct(q.context.labels.begin(), q.context.labels.end());
    if (distinct.size() != q.context.labels.size()) {
      throw Error(ErrorCode::NotChainMap, "two neighbors share a label variable");
    }
  }
  q.koszul = koszul_complex(q.context.labels);
  q.maps.resize(c.top_degree() + 1);
  for (int l = 1; l <= c.top_degree(); ++l) {
    for (std::size_t k = 0; k < c.rank(l); ++k) {
      const Face p{l, k};
      if (!view.contains_v(p)) continue;
      Monomial target;
      for (int t : view.neighbor_positions(p)) target = target * Monomial::of(q.context.labels[t]);
      if (q.context.mv * target != c.element(l, k).mdeg) {
        throw Error(ErrorCode::NotChainMap, "multidegree of " + c.element(l, k).label + " is not m_v times its image");
      }
      const auto to = q.koszul.find(l - 1, target.to_string());
      if (!to) throw Error(ErrorCode::NotChainMap, "no Koszul element " + target.to_string());
      q.maps[l].push_back({k, *to, chain_sign(view.chain(p))});
    }
  }
  // d_K Q = Q d_F, entrywise.
  using Vec = std::map<std::pair<std::size_t, Monomial>, long>;
  auto add = [](Vec& vec, std::size_t idx, const Monomial& m, long s) {
    if ((vec[{idx, m}] += s) == 0) vec.erase({idx, m});
  };
  for (int l = 2; l <= c.top_degree() && l - 1 <= q.koszul.top_degree(); ++l) {
    std::map<std::size_t, int> q_low;
    for (const auto& e : q.maps[l - 1]) q_low[e.from] = e.sign;
    std::map<std::size_t, std::vector<const DiffEntry*>> dk;
    if (l - 1 >= 1) {
      for (const auto& e : q.koszul.differential(l - 1)) dk[e.from].push_back(&e);
    }
    std::map<std::size_t, Vec> lhs, rhs;
    for (const auto& e : c.differential(l)) {
      auto it = q_low.find(e.to);
      if (it == q_low.end()) continue;
      for (const auto& qe : q.maps[l - 1]) {
        if (qe.from == e.to) add(lhs[e.from], qe.to, e.coeff, static_cast<long>(e.sign) * qe.sign);
      }
    }
    for (const auto& qe : q.maps[l]) {
      for (const DiffEntry* d : dk[qe.to]) add(rhs[qe.from], d->to, d->coeff, static_cast<long>(qe.sign) * d->sign);
    }
    for (std::size_t k = 0; k < c.rank(l); ++k) {
      auto a = lhs.find(k), b = rhs.find(k);
      const Vec empty;
      if ((a == lhs.end() ? empty : a->second) != (b == rhs.end() ? empty : b->second)) {
        throw Error(ErrorCode::NotChainMap, "square fails at " + c.element(l, k).label);
      }
    }
  }
  return q;
}

/// Linear strand after deleting v, as the kernel of Q computed over GF(p).
/// The kernel must be spanned by basis elements.
inline BasedComplex strand_via_kernel(const BasedComplex& c, std::size_t v, const TermOrder& order,
                                      const PrimeField& field = PrimeField()) {
  const QMorphism q = q_morphism(c, v, order);
  std::vector<std::vector<bool>> keep(c.top_degree() + 1);
  bool any_vertex = false;
  for (int l = 1; l <= c.top_degree(); ++l) {
    const std::size_t cols = l - 1 <= q.koszul.top_degree() ? q.koszul.rank(l - 1) : 0;
    IntMatrix mat(c.rank(l), std::max<std::size_t>(cols, 1));
    std::vector<bool> mapped(c.rank(l), false);
    for (const auto& e : q.maps[l]) {
      mat.add(e.from, e.to, e.sign);
      mapped[e.from] = true;
    }
    const std::size_t kernel_dim = c.rank(l) - rank(mat, field);
    const auto unmapped = static_cast<std::size_t>(std::count(mapped.begin(), mapped.end(), false));
    if (unmapped != kernel_dim) {
      throw Error(ErrorCode::NonCoordinateKernel,
                  "kernel in degree " + std::to_string(l) + " is not spanned by basis elements");
    }
    keep[l].resize(c.rank(l));
    for (std::size_t k = 0; k < c.rank(l); ++k) keep[l][k] = !mapped[k];
    if (l == 1) any_vertex = unmapped > 0;
  }
  if (!any_vertex) return BasedComplex();
  return detail::restrict_complex(c, [&](int i, std::size_t k) { return i == 0 || keep[i][k]; });
}

/// Faces whose vertices all lie in S (indices into degree 1). The unit in
/// degree 0 is kept when S is nonempty.
inline BasedComplex induced_subcomplex(const BasedComplex& c, const std::vector<std::size_t>& s) {
  if (c.top_degree() >= 2) {
    std::set<Monomial> edge_degrees;
    for (const auto& e : c.basis(2)) {
      if (!edge_degrees.insert(e.mdeg).second) {
        throw Error(ErrorCode::AmbiguousEdges, "two edges share multidegree " + e.mdeg.to_string());
      }
    }
  }
  std::vector<std::size_t> keep_vertices(s);
  std::sort(keep_vertices.begin(), keep_vertices.end());
  keep_vertices.erase(std::unique(keep_vertices.begin(), keep_vertices.end()), keep_vertices.end());
  for (std::size_t w : keep_vertices) detail::require_vertex(c, w);
  if (keep_vertices.empty()) return BasedComplex();
  const auto verts = detail::vertex_sets(c);
  return detail::restrict_complex(c, [&](int i, std::size_t k) {
    if (i == 0) return true;
    return std::includes(keep_vertices.begin(), keep_vertices.end(), verts[i][k].begin(), verts[i][k].end());
  });
}

/// Vertices (degree-1 indices) whose multidegrees lie in the given set.
inline std::vector<std::size_t> vertices_with_degrees(const BasedComplex& c, const std::set<Monomial>& degrees) {
  std::vector<std::size_t> out;
  if (c.top_degree() < 1) return out;
  for (std::size_t k = 0; k < c.rank(1); ++k) {
    if (degrees.count(c.element(1, k).mdeg)) out.push_back(k);
  }
  return out;
}

/// All vertices except v.
inline std::vector<std::size_t> vertices_except(const BasedComplex& c, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; c.top_degree() >= 1 && k < c.rank(1); ++k) {
    if (k != v) out.push_back(k);
  }
  return out;
}

/// Every two neighbors of v whose monomials have a linear syzygy span an
/// edge.
inline bool is_linearly_connected(const BasedComplex& c, std::size_t v, const TermOrder& order) {
  const auto ctx = neighbors(c, v, order);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  if (c.top_degree() >= 2) {
    std::map<std::size_t, std::vector<std::size_t>> ends;
    for (const auto& e : c.differential(2)) ends[e.from].push_back(e.to);
    for (auto& [edge, to] : ends) {
      if (to.size() == 2) edges.insert(std::minmax(to[0], to[1]));
    }
  }
  for (std::size_t a = 0; a < ctx.neighbors.size(); ++a) {
    for (std::size_t b = a + 1; b < ctx.neighbors.size(); ++b) {
      const auto& ma = c.element(1, ctx.neighbors[a]).mdeg;
      const auto& mb = c.element(1, ctx.neighbors[b]).mdeg;
      if (lcm(ma, mb).degree() != ma.degree() + 1) continue;
      if (!edges.count(std::minmax(ctx.neighbors[a], ctx.neighbors[b]))) return false;
    }
  }
  return true;
}

/// Linear strand of rain(J_Delta): the sparse Eagon-Northcott complex
/// restricted to the vertices in_<[a], a in Delta.
inline BasedComplex rainbow_linear_strand(const PureComplex& delta, const TermOrder& order) {
  if (order.rows() != delta.n() || order.cols() != delta.m()) {
    throw Error(ErrorCode::InvalidArgument, "term order and complex have different shapes");
  }
  const BasedComplex e = sparse_en(order);
  std::set<Monomial> wanted;
  for (const auto& a : delta.facets()) wanted.insert(initial_minor(order, a));
  return induced_subcomplex(e, vertices_with_degrees(e, wanted));
}

}  // namespace rainbow
