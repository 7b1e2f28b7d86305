#include <gtest/gtest.h>

#include <random>

#include "nilorb/chevalley.hpp"

using namespace nilorb;

namespace {

const RootSystem& f4() {
  static const RootSystem rs = RootSystem::build(SystemKind::F4);
  return rs;
}
const RootSystem& g2() {
  static const RootSystem rs = RootSystem::build(SystemKind::G2);
  return rs;
}

#include "../fixtures/reference_m.inc"

AlgebraElement<Rational> random_element(std::mt19937_64& rng, int n) {
  auto x = AlgebraElement<Rational>::zero(Field::rational(), n);
  for (auto& c : x.c) c = random_scalar<Rational>(Field::rational(), rng, false);
  return x;
}

}  // namespace

TEST(Chevalley, StructuralChecksPass) {
  for (const auto* rs : {&f4(), &g2()}) {
    auto sc = StructureConstants::compute(*rs);
    auto r = verify_structure(sc);
    EXPECT_EQ(r.antisymmetry, 0);
    EXPECT_EQ(r.magnitude, 0);
    EXPECT_EQ(r.jacobi, 0);
    EXPECT_EQ(r.triples, static_cast<long long>(rs->size()) * rs->size() * rs->size());
    EXPECT_EQ(sc.convention(), "extraspecial-lex");
  }
}

TEST(Chevalley, TwistPreservesStructure) {
  auto sc = StructureConstants::compute(f4());
  auto tw = sc.twisted(declared_twist(f4()));
  EXPECT_TRUE(verify_structure(tw).ok());
  EXPECT_EQ(tw.convention(), "extraspecial-lex+twist");
  EXPECT_THROW(sc.twisted(SignTwist(3, 1)), std::invalid_argument);
  SignTwist bad(24, 1);
  bad[0] = 2;
  EXPECT_THROW(sc.twisted(bad), std::invalid_argument);
}

TEST(Chevalley, MagnitudesMatchReferenceTable) {
  auto sc = StructureConstants::compute(f4());
  const auto& rs = f4();
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      int ref = kReferenceM[i][j] - kReferenceM[j][i];
      int ours = rs.sum(i, j) >= 0 ? sc.n(i, j) : 0;
      EXPECT_EQ(std::abs(ours), std::abs(ref)) << rs.name(i) << ", " << rs.name(j);
    }
}

// Corrupting a single constant must be caught.
TEST(Chevalley, NegativeControlBreaksJacobi) {
  auto sc = StructureConstants::compute(f4());
  const auto& rs = f4();
  std::vector<int> table(24 * 24, 0);
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b) table[a * 24 + b] = rs.sum(a, b) >= 0 ? sc.n(a, b) : 0;
  int a = rs.parse("a3"), b = rs.parse("a2+a3");
  table[a * 24 + b] = -table[a * 24 + b];
  table[b * 24 + a] = -table[b * 24 + a];
  auto broken = StructureConstants::from_table(rs, table, "broken");
  auto r = verify_structure(broken);
  EXPECT_EQ(r.antisymmetry, 0);
  EXPECT_GT(r.jacobi, 0);
}

TEST(Chevalley, ExampleMagnitudes) {
  auto g = StructureConstants::compute(g2());
  EXPECT_EQ(std::abs(g.n(g2().parse("a"), g2().parse("a+b"))), 2);
  EXPECT_EQ(std::abs(g.n(g2().parse("a"), g2().parse("2a+b"))), 3);
  auto f = StructureConstants::compute(f4());
  EXPECT_EQ(std::abs(f.n(f4().parse("a3"), f4().parse("a2+a3"))), 2);
  EXPECT_EQ(std::abs(f.n(f4().parse("a3"), f4().parse("a4"))), 1);
}

TEST(Chevalley, G2ConstantsUnderTheShippedConvention) {
  const auto& rs = g2();
  auto g = StructureConstants::compute(rs);
  EXPECT_EQ(g.n(rs.parse("a"), rs.parse("b")), -1);
  EXPECT_EQ(g.n(rs.parse("a"), rs.parse("a+b")), 2);
  EXPECT_EQ(g.n(rs.parse("a"), rs.parse("2a+b")), 3);
  EXPECT_EQ(g.n(rs.parse("3a+b"), rs.parse("b")), -1);
  EXPECT_EQ(g.n(rs.parse("a+b"), rs.parse("2a+b")), 3);
}

TEST(Chevalley, BracketBasics) {
  const auto& rs = f4();
  auto sc = StructureConstants::compute(rs);
  Field q = Field::rational();
  auto e = [&](const char* r) { return AlgebraElement<Rational>::basis(q, 24, rs.parse(r)); };
  auto z = bracket(sc, e("a3"), e("a4"));
  EXPECT_EQ(z.c[rs.parse("a3+a4")] * z.c[rs.parse("a3+a4")], Rational(1));
  EXPECT_TRUE(bracket(sc, e("a2"), e("a4")).is_zero());
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(rng, 24), y = random_element(rng, 24);
    EXPECT_TRUE(bracket(sc, x, x).is_zero());
    auto xy = bracket(sc, x, y), yx = bracket(sc, y, x);
    for (int i = 0; i < 24; ++i) EXPECT_EQ(xy.c[i], -yx.c[i]);
  }
}

TEST(Chevalley, MixedFieldsRejected) {
  auto sc = StructureConstants::compute(f4());
  auto a = AlgebraElement<Zp>::basis(Field::prime(13), 24, 0);
  auto b = AlgebraElement<Zp>::basis(Field::prime(17), 24, 1);
  EXPECT_THROW(bracket(sc, a, b), ArithmeticError);
}

TEST(Chevalley, AdPowers) {
  auto sc = StructureConstants::compute(f4());
  std::mt19937_64 rng(6);
  auto x = random_element(rng, 24), y = random_element(rng, 24);
  EXPECT_EQ(ad_power(sc, x, y, 0), y);
  EXPECT_TRUE(ad_power(sc, x, y, 11).is_zero());
  EXPECT_THROW(ad_power(sc, x, y, -1), std::invalid_argument);

  const auto& g = g2();
  auto gc = StructureConstants::compute(g);
  Field q = Field::rational();
  auto r = ad_power(gc, AlgebraElement<Rational>::basis(q, 6, g.parse("a")),
                    AlgebraElement<Rational>::basis(q, 6, g.parse("b")), 3);
  for (int i = 0; i < 6; ++i)
    if (i != g.parse("3a+b")) EXPECT_TRUE(is_zero(r.c[i]));
  EXPECT_EQ(abs(r.c[g.parse("3a+b")]), Rational(6));
}
