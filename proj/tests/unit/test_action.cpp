#include <gtest/gtest.h>

#include <random>

#include "nilorb/canon.hpp"
#include "nilorb/symbolic.hpp"

using namespace nilorb;

namespace {

struct F4 {
  RootSystem rs = RootSystem::build(SystemKind::F4);
  StructureConstants sc = StructureConstants::compute(rs);
  int r(const char* name) const { return rs.parse(name); }
  Support d(const char* names) const { return parse_support_names(rs, names); }
};

const F4& f4() {
  static const F4 f;
  return f;
}

const char* kExample1 = "a4, a3+a4, a2, a2+2a3";

}  // namespace

TEST(Action, TangentExample) {
  const auto& f = f4();
  Field q = Field::rational();
  std::mt19937_64 rng(1);
  auto l = random_form<Rational>(q, 24, f.d(kExample1), rng);
  auto x = AlgebraElement<Rational>::basis(q, 24, f.r("a3"));
  auto mu = tangent_act(f.sc, x, l);
  // Only coordinates fed by an orange cell of row a3 into D can be nonzero.
  for (int b = 0; b < 24; ++b) {
    bool fed = l.support().contains(f.rs.sum(f.r("a3"), b));
    if (!fed) EXPECT_TRUE(is_zero(mu.c[b])) << f.rs.name(b);
  }
  EXPECT_EQ(abs(mu.c[f.r("a2+a3")]), 2 * abs(l.c[f.r("a2+2a3")]));
  EXPECT_TRUE(tangent_act(f.sc, AlgebraElement<Rational>::zero(q, 24), l).support().empty());
}

TEST(Action, TangentOnSingleRootForm) {
  const auto& f = f4();
  Field q = Field::rational();
  std::mt19937_64 rng(2);
  for (int delta = 0; delta < 24; ++delta) {
    auto l = LinearForm<Rational>::dual_basis(q, 24, delta);
    AlgebraElement<Rational> x = AlgebraElement<Rational>::zero(q, 24);
    for (auto& c : x.c) c = random_scalar<Rational>(q, rng, true);
    auto mu = tangent_act(f.sc, x, l);
    auto sing = f.rs.singular_set(delta);
    for (int b = 0; b < 24; ++b) {
      bool in = std::find(sing.begin(), sing.end(), b) != sing.end();
      if (!in) EXPECT_TRUE(is_zero(mu.c[b]));
    }
  }
}

TEST(Action, CoadjointIdentityAndFixedTop) {
  const auto& f = f4();
  Field p = Field::prime(13);
  std::mt19937_64 rng(3);
  auto l = random_form<Zp>(p, 24, f.d("a1+a2+2a3, a2+a3, a4"), rng);
  EXPECT_EQ(coadjoint_act(f.sc, AlgebraElement<Zp>::zero(p, 24), l), l);
  for (int delta = 0; delta < 24; ++delta) {
    auto e = LinearForm<Zp>::dual_basis(p, 24, delta);
    auto x = AlgebraElement<Zp>::basis(p, 24, delta, Zp(5, 13));
    EXPECT_EQ(coadjoint_act(f.sc, x, e).c[delta], Zp(1, 13));
  }
}

TEST(Action, CoadjointRequiresLargeCharacteristic) {
  const auto& f = f4();
  Field p = Field::prime(11);
  auto l = LinearForm<Zp>::dual_basis(p, 24, 3);
  auto x = AlgebraElement<Zp>::basis(p, 24, 1);
  try {
    coadjoint_act(f.sc, x, l);
    FAIL() << "expected a characteristic error";
  } catch (const CharacteristicError& e) {
    EXPECT_NE(std::string(e.what()).find("> 11"), std::string::npos);
  }
}

// mu_{a2} = lam_{a2} - x_{a3}^2 lam_{a2+2a3} for x = x_{a3} e_{a3}, with the
// declared basis signs.
TEST(Action, CoadjointExampleCoordinate) {
  const auto& f = f4();
  auto sc = f.sc.twisted(declared_twist(f.rs));
  Field q = Field::rational();
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto l = random_form<Rational>(q, 24, f.d(kExample1), rng);
    Rational x3 = random_scalar<Rational>(q, rng, true);
    auto x = AlgebraElement<Rational>::basis(q, 24, f.r("a3"), x3);
    auto mu = coadjoint_act(sc, x, l);
    EXPECT_EQ(mu.c[f.r("a2")], l.c[f.r("a2")] - x3 * x3 * l.c[f.r("a2+2a3")]);
  }
}

// First-order term of exp(t x).lambda in t is the tangent action.
TEST(Action, TangentIsTheDerivativeOfCoadjoint) {
  const auto& f = f4();
  const VarLayout L{24};
  std::mt19937_64 rng(5);
  Field q = Field::rational();
  for (int t = 0; t < 5; ++t) {
    auto l = random_form<Rational>(q, 24, Support{0xFFFFFFu}, rng);
    auto x = AlgebraElement<Rational>::zero(q, 24);
    for (auto& c : x.c) c = random_scalar<Rational>(q, rng, false);
    auto tan = tangent_act(f.sc, x, l);
    // Linear part in the x-variables of mu_coordinates, evaluated at x.
    auto mu = mu_coordinates(f.sc, l);
    for (int b = 0; b < 24; ++b) {
      Rational lin = 0;
      for (const auto& [m, c] : mu[b].terms()) {
        int deg = 0, var = -1;
        for (int v = 0; v < L.nvars(); ++v)
          if (m[v]) {
            deg += m[v];
            var = v;
          }
        if (deg == 1) lin += c * x.c[var];
      }
      EXPECT_EQ(lin, tan.c[b]) << f.rs.name(b);
    }
  }
}

TEST(Action, RankPairShapes) {
  const auto& f = f4();
  Field p = Field::prime(13);
  auto l = LinearForm<Zp>::zero(p, 24);
  auto rp = build_rank_pair(f.sc, l, 23);
  EXPECT_EQ(rp.A.rows, 1);
  EXPECT_EQ(rp.B.rows, 0);
  EXPECT_EQ(matrix_rank(rp.A), 0);
  for (int g = 0; g < 24; ++g) {
    auto r = build_rank_pair(f.sc, l, g);
    EXPECT_EQ(r.A.rows, r.B.rows + 1);
    EXPECT_TRUE(satisfies_rk(f.sc, l, g));
  }
  auto one = LinearForm<Zp>::dual_basis(p, 24, f.r("a2+2a3"));
  auto r3 = build_rank_pair(f.sc, one, f.r("a3"));
  int nonzero = 0, col = -1;
  for (int b = 0; b < 24; ++b)
    if (!r3.A(r3.A.rows - 1, b).is_zero()) {
      ++nonzero;
      col = b;
    }
  EXPECT_EQ(nonzero, 1);
  EXPECT_EQ(col, f.r("a2+a3"));
  EXPECT_THROW(build_rank_pair(f.sc, l, 24), std::out_of_range);
}

TEST(Action, MatrixRank) {
  Field p = Field::prime(13);
  Matrix<Zp> z(3, 4, Zp(0, 13));
  EXPECT_EQ(matrix_rank(z), 0);
  Matrix<Zp> id(3, 3, Zp(0, 13));
  for (int i = 0; i < 3; ++i) id(i, i) = Zp(1, 13);
  EXPECT_EQ(matrix_rank(id), 3);
  (void)p;
}

TEST(Action, SkewRankOfSingleRootFormIsSingularSetSize) {
  const auto& f = f4();
  Field p = Field::prime(13);
  for (int delta = 0; delta < 24; ++delta) {
    auto l = LinearForm<Zp>::dual_basis(p, 24, delta);
    EXPECT_EQ(skew_rank(f.sc, l), static_cast<int>(f.rs.singular_set(delta).size()));
  }
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    auto l = random_form<Zp>(p, 24, Support{static_cast<std::uint32_t>(rng() & 0xFFFFFFu)}, rng);
    EXPECT_EQ(skew_rank(f.sc, l) % 2, 0);
  }
}

TEST(Action, MembershipExamples) {
  const auto& f = f4();
  Field p = Field::prime(13);
  std::mt19937_64 rng(7);
  EXPECT_TRUE(in_S(f.sc, LinearForm<Zp>::zero(p, 24)));
  auto l = random_form<Zp>(p, 24, f.d(kExample1), rng);
  EXPECT_TRUE(satisfies_rk(f.sc, l, f.r("a2+2a3")));
  EXPECT_TRUE(satisfies_rk(f.sc, l, f.r("a4")));
  EXPECT_TRUE(in_S(f.sc, l));
  // A non-singular rook placement: no root of D is a difference of two others.
  auto rook = random_form<Zp>(p, 24, f.d("2a1+3a2+4a3+2a4, a3"), rng);
  EXPECT_TRUE(in_S(f.sc, rook));
  // in_S agrees with the per-root test.
  for (int t = 0; t < 40; ++t) {
    auto m = random_form<Zp>(p, 24, Support{static_cast<std::uint32_t>(rng() & 0xFFFFFFu)}, rng);
    bool all = true;
    for (int g : m.support().descending()) all = all && satisfies_rk(f.sc, m, g);
    EXPECT_EQ(in_S(f.sc, m), all);
  }
}

TEST(Action, AmbiguousSupportTwoFailsAtGenericCoordinates) {
  const auto& f = f4();
  auto amb = read_support_fixture(f.rs, std::string(NILORB_FIXTURES) + "/ambiguous_33.txt");
  ASSERT_EQ(amb.size(), 33u);
  Field p = Field::prime(13);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) EXPECT_FALSE(in_S(f.sc, random_form<Zp>(p, 24, amb[1], rng)));
}

TEST(Action, ConstraintViolationExcludesSupportThirty) {
  const auto& f = f4();
  auto amb = read_support_fixture(f.rs, std::string(NILORB_FIXTURES) + "/ambiguous_33.txt");
  auto c = *default_constraint(f.rs);
  auto tw = declared_twist(f.rs);
  Field p = Field::prime(13);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    auto l = random_form<Zp>(p, 24, amb[29], rng);
    if (c.holds(l, tw)) continue;
    EXPECT_FALSE(in_S(f.sc, l));
  }
}

TEST(Action, SufficientSupportsAreInSForRandomCoordinates) {
  const auto& f = f4();
  auto suff = enumerate_supports(f.rs, Condition::sufficient());
  Field p = Field::prime(13);
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    Support d = suff[rng() % suff.size()];
    EXPECT_TRUE(in_S(f.sc, random_form<Zp>(p, 24, d, rng))) << format_support(f.rs, d);
  }
}
