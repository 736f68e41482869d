#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rainbow/rainbow.hpp"

using namespace rainbow;
using oracle::mono;
using oracle::monos;

namespace {

std::size_t vertex(const BasedComplex& c, const char* text) {
  const auto v = vertices_with_degrees(c, {mono(text)});
  EXPECT_EQ(v.size(), 1u) << text;
  return v.at(0);
}

std::size_t edge(const BasedComplex& c, const char* text) {
  for (std::size_t k = 0; k < c.rank(2); ++k) {
    if (c.element(2, k).mdeg == mono(text)) return k;
  }
  ADD_FAILURE() << "no edge " << text;
  return 0;
}

std::set<Monomial> mdegs(const BasedComplex& c, const std::vector<std::size_t>& vs) {
  std::set<Monomial> out;
  for (std::size_t w : vs) out.insert(c.element(1, w).mdeg);
  return out;
}

// Vertices and edges given by multidegrees; each edge joins the two listed
// vertices with the quotient multidegrees as coefficients.
BasedComplex graph(const std::vector<const char*>& vertices,
                   const std::vector<std::tuple<const char*, const char*, const char*>>& edges) {
  BasedComplex c;
  c.ensure_degree(0);
  c.add_element(0, {kUnitLabel, Monomial()});
  c.ensure_degree(1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    c.add_element(1, {"v" + std::to_string(k), mono(vertices[k])});
    c.add_entry(1, {k, 0, 1, mono(vertices[k])});
  }
  if (edges.empty()) return c;
  c.ensure_degree(2);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [a, b, m] = edges[k];
    c.add_element(2, {"e" + std::to_string(k), mono(m)});
    const auto ia = static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), a) - vertices.begin());
    const auto ib = static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), b) - vertices.begin());
    c.add_entry(2, {k, ia, 1, *mono(m).divide(mono(a))});
    c.add_entry(2, {k, ib, -1, *mono(m).divide(mono(b))});
  }
  return c;
}

std::vector<std::size_t> linear_row(const PureComplex& d, const TermOrder& o) {
  const auto b = koszul_betti(rainbow_dfi(d, o)).coarse();
  std::vector<std::size_t> out{1};
  for (int i = 1; i <= d.m() - d.n() + 1; ++i) {
    const auto r = b.at(i, d.n() + i - 1);
    if (r == 0) break;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(Neighbors, TwoByThreeCorner) {
  const auto o = TermOrder::diagonal(2, 3);
  const auto c = sparse_en(o);
  const auto ctx = neighbors(c, vertex(c, "x11*x22"), o);
  EXPECT_EQ(mdegs(c, ctx.neighbors), monos({"x11*x23"}));
  ASSERT_EQ(ctx.labels.size(), 1u);
  EXPECT_EQ(ctx.labels[0], grid_var(2, 3));
  EXPECT_EQ(ctx.mv, mono("x11*x22"));
}

TEST(Neighbors, IsolatedVertex) {
  const auto c = graph({"x11*x22", "x12*x23"}, {});
  const auto ctx = neighbors(c, 0, TermOrder::diagonal(2, 3));
  EXPECT_TRUE(ctx.neighbors.empty());
  EXPECT_EQ(ctx.position(1), -1);
}

TEST(Neighbors, PictureCenterVertices) {
  const auto o = TermOrder(oracle::kLeftWeights);
  const auto c = sparse_en(o);
  std::set<Monomial> expect;
  for (const auto& e : oracle::left_edges()) {
    if (e.count(mono("x12*x21"))) {
      for (const auto& m : e) {
        if (!(m == mono("x12*x21"))) expect.insert(m);
      }
    }
  }
  const auto ctx = neighbors(c, vertex(c, "x12*x21"), o);
  EXPECT_EQ(ctx.neighbors.size(), 4u);
  EXPECT_EQ(mdegs(c, ctx.neighbors), expect);

  const auto d = TermOrder::diagonal(2, 4);
  const auto cd = sparse_en(d);
  EXPECT_EQ(mdegs(cd, neighbors(cd, vertex(cd, "x12*x23"), d).neighbors), monos({"x11*x23", "x12*x24"}));
}

TEST(Neighbors, SortedByLabel) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 10; ++t) {
    const auto o = random_term_order(VariableMatrix(3, 5), rng);
    const auto c = sparse_en(o);
    for (std::size_t v = 0; v < c.rank(1); ++v) {
      const auto ctx = neighbors(c, v, o);
      const auto nb = oracle::neighborhood(c, v, o.weights());
      EXPECT_EQ(ctx.neighbors, nb.vertices);
      std::set<Variable> distinct(ctx.labels.begin(), ctx.labels.end());
      EXPECT_EQ(distinct.size(), ctx.labels.size());
    }
  }
}

TEST(SupportChain, EdgeIsOneStep) {
  const auto o = TermOrder::diagonal(2, 3);
  const auto c = sparse_en(o);
  const auto v = vertex(c, "x11*x22");
  const auto e = edge(c, "x11*x22*x23");
  const auto ch = support_chain(c, {2, e}, v, o);
  ASSERT_EQ(ch.faces.size(), 2u);
  EXPECT_EQ(ch.faces[1], (Face{1, v}));
  int sign = 0;
  for (const auto& d : c.differential(2)) {
    if (d.from == e && d.to == v) sign = d.sign;
  }
  EXPECT_EQ(ch.signs, std::vector<int>{sign});
  EXPECT_EQ(chain_sign(ch), sign);
}

TEST(SupportChain, FaceWithoutVertexThrows) {
  const auto o = TermOrder::diagonal(2, 3);
  const auto c = sparse_en(o);
  EXPECT_THROW(support_chain(c, {2, edge(c, "x11*x12*x23")}, vertex(c, "x11*x22"), o), Error);
  EXPECT_THROW(support_chain(c, {5, 0}, 0, o), Error);
}

TEST(SupportChain, UniqueAndMatchesEnumeration) {
  std::mt19937_64 rng(53);
  for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
    for (int t = 0; t < 3; ++t) {
      const auto o = t == 0 ? TermOrder::diagonal(n, m) : random_term_order(VariableMatrix(n, m), rng);
      const auto c = sparse_en(o);
      const auto fv = oracle::face_vertices(c);
      for (std::size_t v = 0; v < c.rank(1); ++v) {
        for (int d = 1; d <= c.top_degree(); ++d) {
          for (std::size_t k = 0; k < c.rank(d); ++k) {
            if (!fv[d][k].count(v)) continue;
            const auto all = oracle::support_chains(c, d, k, v, o.weights());
            ASSERT_EQ(all.size(), 1u);
            const auto ch = support_chain(c, {d, k}, v, o);
            ASSERT_EQ(ch.faces.size(), all[0].faces.size());
            for (std::size_t i = 0; i < ch.faces.size(); ++i) {
              EXPECT_EQ(ch.faces[i], (Face{all[0].faces[i].first, all[0].faces[i].second}));
            }
            EXPECT_EQ(chain_sign(ch), all[0].sign);
          }
        }
      }
    }
  }
}

TEST(SignLemma, HoldsOnSparse) {
  for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
    const auto o = TermOrder::diagonal(n, m);
    const auto c = sparse_en(o);
    const auto fv = oracle::face_vertices(c);
    EXPECT_TRUE(face_supports_injective(c));
    EXPECT_TRUE(oracle::supports_injective(fv));
    for (std::size_t v = 0; v < c.rank(1); ++v) {
      const auto nb = oracle::neighborhood(c, v, o.weights());
      EXPECT_TRUE(maximal_support_holds(c, v, o));
      EXPECT_TRUE(oracle::maximal_support(c, fv, nb, v));
      EXPECT_TRUE(sign_lemma_holds(c, v, o));
      EXPECT_TRUE(oracle::sign_lemma(c, fv, nb, v));
    }
  }
}

TEST(FaceSupports, DuplicateEdgeIsNotInjective) {
  const auto c = graph({"x11", "x12"}, {{"x11", "x12", "x11*x12"}, {"x11", "x12", "x11*x12"}});
  EXPECT_FALSE(face_supports_injective(c));
}

TEST(QMorphism, TwoByThreeMiddle) {
  const auto o = TermOrder::diagonal(2, 3);
  const auto c = sparse_en(o);
  const auto v = vertex(c, "x11*x23");
  const auto q = q_morphism(c, v, o);
  EXPECT_EQ(q.koszul.ranks(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(q.maps[1].size(), 1u);
  EXPECT_EQ(q.maps[2].size(), 2u);
  EXPECT_TRUE(oracle::q_commutes(c, v, o.weights()));
}

TEST(QMorphism, PictureCenter) {
  const auto o = TermOrder(oracle::kLeftWeights);
  const auto c = sparse_en(o);
  const auto v = vertex(c, "x12*x21");
  const auto q = q_morphism(c, v, o);
  EXPECT_EQ(q.koszul.rank(1), 4u);
  EXPECT_TRUE(oracle::q_commutes(c, v, o.weights()));
  for (std::size_t k = 0; k < c.rank(3); ++k) {
    const auto vs = oracle::face_vertices(c)[3][k];
    EXPECT_EQ(std::count_if(q.maps[3].begin(), q.maps[3].end(), [&](const QEntry& e) { return e.from == k; }),
              vs.count(v) ? 1 : 0);
  }
}

TEST(QMorphism, SharedLabelIsNotAChainMap) {
  // Both edges at x11 x21 carry the label x12.
  const auto c = graph({"x11*x21", "x12*x21", "x11*x12"},
                       {{"x11*x21", "x12*x21", "x11*x12*x21"}, {"x11*x21", "x11*x12", "x11*x12*x21"}});
  try {
    q_morphism(c, 0, TermOrder::diagonal(2, 2));
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotChainMap);
  }
}

TEST(StrandViaKernel, TwoByThreeEnd) {
  const auto o = TermOrder::diagonal(2, 3);
  const auto c = sparse_en(o);
  const auto v = vertex(c, "x12*x23");
  const auto k = strand_via_kernel(c, v, o);
  EXPECT_EQ(k.ranks(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(k.to_json(), induced_subcomplex(c, vertices_except(c, v)).to_json());
}

TEST(StrandViaKernel, TwoByFourEveryVertex) {
  const auto o = TermOrder::diagonal(2, 4);
  const auto c = sparse_en(o);
  const auto all = oracle::generator_set(initial_ideal_maximal_minors(VariableMatrix(2, 4), o));
  int used = 0;
  for (std::size_t v = 0; v < c.rank(1); ++v) {
    if (!is_linearly_connected(c, v, o)) continue;
    ++used;
    const auto k = strand_via_kernel(c, v, o);
    EXPECT_EQ(k.to_json(), induced_subcomplex(c, vertices_except(c, v)).to_json());
    auto rest = all;
    rest.erase(c.element(1, v).mdeg);
    const auto b = koszul_betti(MonomialIdeal(std::vector<Monomial>(rest.begin(), rest.end()))).coarse();
    for (int i = 1; i <= k.top_degree(); ++i) EXPECT_EQ(k.rank(i), b.at(i, i + 1));
    EXPECT_EQ(b.at(k.top_degree() + 1, k.top_degree() + 2), 0u);
    EXPECT_TRUE(is_linear_strand_of_module(k));
  }
  EXPECT_GT(used, 0);
}

TEST(StrandViaKernel, CornerOfTwoByFour) {
  const auto o = TermOrder::diagonal(2, 4);
  const auto c = sparse_en(o);
  const auto v = vertex(c, "x11*x22");
  ASSERT_TRUE(is_linearly_connected(c, v, o));
  EXPECT_EQ(strand_via_kernel(c, v, o).ranks(), (std::vector<std::size_t>{1, 5, 6, 2}));
}

TEST(StrandViaKernel, IsolatedVertex) {
  const auto c = graph({"x11*x22", "x12*x23"}, {});
  const auto k = strand_via_kernel(c, 0, TermOrder::diagonal(2, 3));
  EXPECT_EQ(k.ranks(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(k.element(1, 0).mdeg, mono("x12*x23"));
}

TEST(InducedSubcomplex, AllVerticesIsIdentity) {
  const auto c = sparse_en(TermOrder::diagonal(3, 5));
  std::vector<std::size_t> all;
  for (std::size_t k = 0; k < c.rank(1); ++k) all.push_back(k);
  EXPECT_EQ(induced_subcomplex(c, all).to_json(), c.to_json());
}

TEST(InducedSubcomplex, EmptySet) {
  const auto c = sparse_en(TermOrder::diagonal(2, 3));
  EXPECT_TRUE(induced_subcomplex(c, {}).ranks().empty());
}

TEST(InducedSubcomplex, AmbiguousEdgesThrow) {
  const auto c = graph({"x11", "x12"}, {{"x11", "x12", "x11*x12"}, {"x11", "x12", "x11*x12"}});
  EXPECT_THROW(induced_subcomplex(c, {0}), Error);
}

TEST(LinearlyConnected, MissingEdgeBetweenNeighbors) {
  const std::vector<const char*> vs{"x11*x22", "x11*x23", "x11*x24"};
  const auto path = graph(vs, {{"x11*x22", "x11*x23", "x11*x22*x23"}, {"x11*x22", "x11*x24", "x11*x22*x24"}});
  const auto o = TermOrder::diagonal(2, 4);
  EXPECT_FALSE(is_linearly_connected(path, 0, o));
  const auto closed = graph(vs, {{"x11*x22", "x11*x23", "x11*x22*x23"},
                                 {"x11*x22", "x11*x24", "x11*x22*x24"},
                                 {"x11*x23", "x11*x24", "x11*x23*x24"}});
  EXPECT_TRUE(is_linearly_connected(closed, 0, o));
}

TEST(LinearlyConnected, NoNeighbors) {
  EXPECT_TRUE(is_linearly_connected(graph({"x11*x22", "x12*x23"}, {}), 0, TermOrder::diagonal(2, 3)));
}

TEST(RainbowLinearStrand, WorkedExample) {
  const auto o = TermOrder::diagonal(3, 5);
  const auto delta = alexander_dual_complex(PureComplex(3, 5, {{1, 2, 3}, {3, 4, 5}}));
  const auto g = rainbow_linear_strand(delta, o);
  EXPECT_EQ(g.ranks(), (std::vector<std::size_t>{1, 8, 11, 4}));
  EXPECT_EQ(g.ranks(), linear_row(delta, o));
  EXPECT_TRUE(is_linear_strand_of_module(g));
}

TEST(RainbowLinearStrand, FullComplexIsSparse) {
  const auto o = TermOrder::diagonal(3, 5);
  EXPECT_EQ(rainbow_linear_strand(PureComplex::full(3, 5), o).to_json(), sparse_en(o).to_json());
}

TEST(RainbowLinearStrand, SingleFacet) {
  const auto o = TermOrder::diagonal(3, 5);
  const auto g = rainbow_linear_strand(PureComplex(3, 5, {{2, 4, 5}}), o);
  EXPECT_EQ(g.ranks(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(g.element(1, 0).mdeg, mono("x12*x24*x35"));
  EXPECT_THROW(rainbow_linear_strand(PureComplex(3, 5, {{2, 4, 5}}), TermOrder::diagonal(2, 5)), Error);
}

TEST(RainbowLinearStrand, MatchesBettiRowOnRandomComplexes) {
  std::mt19937_64 rng(57);
  for (auto [n, m] : {std::pair{2, 4}, std::pair{3, 5}}) {
    for (int t = 0; t < 15; ++t) {
      const auto o = random_term_order(VariableMatrix(n, m), rng);
      const auto d = oracle::random_pure_complex(n, m, rng);
      if (d.facets().empty()) continue;
      const auto g = rainbow_linear_strand(d, o);
      EXPECT_EQ(g.ranks(), linear_row(d, o));
      EXPECT_TRUE(is_linear_strand_of_module(g));
    }
  }
}

TEST(QMorphism, OracleRejectsFlippedSign) {
  const auto o = TermOrder::diagonal(2, 4);
  const auto c = sparse_en(o);
  auto j = c.to_json();
  const std::string top = c.element(3, 0).label;
  for (auto& e : j["diff"]) {
    if (e["from"] == top) {
      e["sign"] = -e["sign"].get<int>();
      break;
    }
  }
  const auto bad = BasedComplex::from_json(j);
  bool any = false;
  for (std::size_t v = 0; v < bad.rank(1); ++v) any = any || !oracle::q_commutes(bad, v, o.weights());
  EXPECT_TRUE(any);
  for (std::size_t v = 0; v < c.rank(1); ++v) EXPECT_TRUE(oracle::q_commutes(c, v, o.weights()));
}
