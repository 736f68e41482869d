#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rainbow/rainbow.hpp"

using namespace rainbow;
using oracle::mono;
using oracle::monos;

namespace {

std::set<Monomial> gens(const MonomialIdeal& i) { return oracle::generator_set(i); }

std::set<std::pair<int, Monomial>> signed_set(const std::vector<SignedTerm>& t) {
  std::set<std::pair<int, Monomial>> s;
  for (const auto& x : t) s.insert({x.sign, x.monomial});
  return s;
}

}  // namespace

TEST(MinorTerms, TwoByTwo) {
  const auto t = minor_terms(VariableMatrix(2, 3), {1, 2});
  EXPECT_EQ(signed_set(t), (std::set<std::pair<int, Monomial>>{{1, mono("x11*x22")}, {-1, mono("x12*x21")}}));
}

TEST(MinorTerms, OneRow) {
  const auto t = minor_terms(VariableMatrix(1, 4), {3});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].sign, 1);
  EXPECT_EQ(t[0].monomial, mono("x13"));
}

TEST(MinorTerms, ThreeByThreeSigns) {
  const auto t = minor_terms(VariableMatrix(3, 3), {1, 2, 3});
  ASSERT_EQ(t.size(), 6u);
  int sum = 0;
  for (const auto& x : t) sum += x.sign;
  EXPECT_EQ(sum, 0);
  EXPECT_EQ(signed_set(t).count({1, mono("x13*x21*x32")}), 1u);
  EXPECT_EQ(signed_set(t).count({-1, mono("x13*x22*x31")}), 1u);
}

TEST(MinorTerms, RejectsWrongSize) {
  EXPECT_THROW(minor_terms(VariableMatrix(2, 3), {1}), Error);
  EXPECT_THROW(VariableMatrix(3, 2), Error);
}

TEST(InitialMinor, DiagonalExamples) {
  EXPECT_EQ(initial_minor(TermOrder::diagonal(2, 3), {1, 3}), mono("x11*x23"));
  EXPECT_EQ(initial_minor(TermOrder::diagonal(3, 3), {1, 2, 3}), mono("x11*x22*x33"));
  EXPECT_EQ(initial_minor(TermOrder({{4, 1, 9}}), {2}), mono("x12"));
}

TEST(InitialMinor, MatchesPermutationSearch) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = n + static_cast<int>(rng() % 3);
    const auto o = TermOrder::random(n, m, rng);
    for (const auto& a : subsets(m, n)) EXPECT_EQ(initial_minor(o, a), oracle::initial_minor(o.weights(), a));
  }
}

TEST(InitialIdeal, TwoByThreeDiagonal) {
  const auto i = initial_ideal_maximal_minors(VariableMatrix(2, 3), TermOrder::diagonal(2, 3));
  EXPECT_EQ(gens(i), monos({"x11*x22", "x11*x23", "x12*x23"}));
}

TEST(InitialIdeal, TwoByFourDiagonal) {
  const auto i = initial_ideal_maximal_minors(VariableMatrix(2, 4), TermOrder::diagonal(2, 4));
  std::set<Monomial> expect;
  for (int a = 1; a <= 4; ++a) {
    for (int b = a + 1; b <= 4; ++b) expect.insert(Monomial::grid({{1, a}, {2, b}}));
  }
  EXPECT_EQ(gens(i), expect);
}

TEST(InitialIdeal, PictureOrders) {
  EXPECT_EQ(gens(initial_ideal_maximal_minors(VariableMatrix(2, 4), TermOrder(oracle::kLeftWeights))),
            oracle::left_vertices());
  EXPECT_EQ(gens(initial_ideal_maximal_minors(VariableMatrix(2, 4), TermOrder(oracle::kRightWeights))),
            oracle::right_vertices());
}

TEST(InitialIdeal, CountRainbowAndBetti) {
  std::mt19937_64 rng(29);
  for (auto [n, m] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 4}, std::pair{3, 5}}) {
    for (int t = 0; t < 3; ++t) {
      const auto o = t == 0 ? TermOrder::diagonal(n, m) : random_term_order(VariableMatrix(n, m), rng);
      const auto i = initial_ideal_maximal_minors(VariableMatrix(n, m), o);
      EXPECT_EQ(static_cast<std::int64_t>(i.size()), oracle::choose(m, n));
      for (const auto& g : i.generators()) {
        std::set<int> rows;
        for (const auto& [v, e] : g.terms()) rows.insert(v.row);
        EXPECT_EQ(static_cast<int>(rows.size()), n);
        EXPECT_EQ(g.degree(), static_cast<std::uint32_t>(n));
      }
      CoarseBettiTable expect;
      expect.entries[{0, 0}] = 1;
      for (int l = 1; l <= m - n + 1; ++l) expect.entries[{l, n - 1 + l}] = oracle::en_rank(n, m, l);
      EXPECT_EQ(koszul_betti(i).coarse(), expect) << n << "x" << m;
    }
  }
}

TEST(AlexanderDualComplex, WorkedExample) {
  const PureComplex dual(3, 5, {{1, 2, 3}, {3, 4, 5}});
  const auto delta = alexander_dual_complex(dual);
  EXPECT_EQ(delta.size(), 8u);
  EXPECT_FALSE(delta.contains({1, 2, 3}));
  EXPECT_TRUE(delta.contains({1, 2, 4}));
}

TEST(AlexanderDualComplex, FullAndDoubleDual) {
  EXPECT_EQ(alexander_dual_complex(PureComplex::full(2, 4)).size(), 0u);
  const PureComplex d(2, 5, {{1, 2}, {2, 5}, {3, 4}});
  EXPECT_EQ(alexander_dual_complex(alexander_dual_complex(d)), d);
}

TEST(RainbowDfi, WorkedExampleHasEightGenerators) {
  const PureComplex dual(3, 5, {{1, 2, 3}, {3, 4, 5}});
  EXPECT_EQ(rainbow_dfi(alexander_dual_complex(dual), TermOrder::diagonal(3, 5)).size(), 8u);
}

TEST(RainbowDfi, FullAndEmpty) {
  const auto o = TermOrder::diagonal(3, 5);
  EXPECT_EQ(gens(rainbow_dfi(PureComplex::full(3, 5), o)), gens(initial_ideal_maximal_minors(VariableMatrix(3, 5), o)));
  EXPECT_TRUE(rainbow_dfi(PureComplex(3, 5), o).is_zero());
}

TEST(RainbowDfi, PartitionExhaustiveTwoRows) {
  for (int m = 2; m <= 5; ++m) {
    const auto o = TermOrder::diagonal(2, m);
    const auto all = subsets(m, 2);
    const auto full = gens(initial_ideal_maximal_minors(VariableMatrix(2, m), o));
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
      std::vector<ColumnSet> f;
      for (std::size_t k = 0; k < all.size(); ++k) {
        if (mask >> k & 1u) f.push_back(all[k]);
      }
      const PureComplex d(2, m, f);
      const auto a = gens(rainbow_dfi(d, o));
      const auto b = gens(rainbow_dfi(alexander_dual_complex(d), o));
      std::set<Monomial> both;
      both.insert(a.begin(), a.end());
      both.insert(b.begin(), b.end());
      ASSERT_EQ(a.size() + b.size(), full.size());
      ASSERT_EQ(both, full);
    }
  }
}

TEST(RainbowDfi, PartitionRandomThreeRows) {
  std::mt19937_64 rng(31);
  for (auto [n, m] : {std::pair{3, 5}, std::pair{3, 6}}) {
    for (int t = 0; t < 50; ++t) {
      const auto o = random_term_order(VariableMatrix(n, m), rng);
      const auto d = oracle::random_pure_complex(n, m, rng);
      const auto a = gens(rainbow_dfi(d, o));
      const auto b = gens(rainbow_dfi(alexander_dual_complex(d), o));
      std::set<Monomial> both(a);
      both.insert(b.begin(), b.end());
      EXPECT_EQ(a.size() + b.size(), both.size());
      EXPECT_EQ(both, gens(initial_ideal_maximal_minors(VariableMatrix(n, m), o)));
    }
  }
}

TEST(OverlapCondition, Examples) {
  EXPECT_TRUE(overlap_condition(PureComplex(3, 5, {{1, 2, 3}, {3, 4, 5}})));
  EXPECT_FALSE(overlap_condition(PureComplex(3, 5, {{1, 2, 3}, {1, 2, 4}})));
  EXPECT_TRUE(overlap_condition(PureComplex(3, 5, {{2, 3, 4}})));
}

TEST(PureComplexJson, RoundTripAndValidation) {
  const PureComplex d(2, 4, {{3, 1}, {2, 4}, {1, 3}});
  EXPECT_EQ(d.facets(), (std::vector<ColumnSet>{{1, 3}, {2, 4}}));
  EXPECT_EQ(PureComplex::from_json(d.to_json()), d);
  EXPECT_THROW(PureComplex(2, 4, {{1, 5}}), Error);
  EXPECT_THROW(PureComplex(2, 4, {{1, 1}}), Error);
  EXPECT_THROW(PureComplex::from_json(nlohmann::json{{"n", 2}}), Error);
}

TEST(RandomTermOrder, SeededAndAdmissible) {
  std::mt19937_64 a(5), b(5);
  const auto oa = random_term_order(VariableMatrix(3, 6), a);
  const auto ob = random_term_order(VariableMatrix(3, 6), b);
  EXPECT_EQ(oa, ob);
  for (const auto& row : oa.weights()) {
    for (auto w : row) {
      EXPECT_GE(w, 0);
      EXPECT_LE(w, 10000);
    }
  }
}
