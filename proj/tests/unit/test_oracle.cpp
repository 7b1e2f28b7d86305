#include <gtest/gtest.h>

#include <random>

#include "nilorb/canon.hpp"
#include "nilorb/oracle.hpp"

using namespace nilorb;

namespace {

struct G2 {
  RootSystem rs = RootSystem::build(SystemKind::G2);
  StructureConstants sc = StructureConstants::compute(rs);
  OrbitPartition part = orbit_partition(sc, 7);
  std::vector<Support> listed() const {
    std::vector<Support> out;
    for (const auto& [d, st] : final_S(sc, default_classify_options(rs))) out.push_back(d);
    return out;
  }
};

const G2& g2() {
  static const G2 g;
  return g;
}

}  // namespace

TEST(Oracle, CodecRoundTrip) {
  FormCodec c(7, 6);
  EXPECT_EQ(c.count(), 117649u);
  std::mt19937_64 rng(1);
  std::vector<std::uint32_t> d;
  for (int t = 0; t < 1000; ++t) {
    std::uint64_t v = rng() % c.count();
    c.unpack(v, d);
    EXPECT_EQ(c.pack(d), v);
    EXPECT_EQ(c.pack(c.form(v)), v);
  }
  c.unpack(1, d);
  EXPECT_EQ(d[0], 1u);
}

TEST(Oracle, G2PartitionAtSeven) {
  const auto& g = g2();
  EXPECT_EQ(g.part.orbits(), 433u);
  std::uint64_t total = 0;
  for (const auto& [id, size] : g.part.sizes) {
    total += size;
    EXPECT_EQ(g.part.orbit_id[id], id);
  }
  EXPECT_EQ(total, 117649u);
  EXPECT_EQ(partition_spot_check(g.sc, g.part, 5000, 3), 0u);
}

TEST(Oracle, G2CanonicalFormsAreUnique) {
  const auto& g = g2();
  auto rep = verify_unique_canonicals(g.sc, g.part, g.listed());
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_TRUE(rep.histogram_mismatches.empty());
  EXPECT_EQ(rep.canonicals, g.part.orbits());
  // (1, 6, 5, 1) at q = 7
  EXPECT_EQ(rep.canonicals, 1u + 6 * 6 + 5 * 36 + 216);
  EXPECT_TRUE(orbit_size_rank_check(g.sc, g.part).mismatches.empty());
}

TEST(Oracle, TopDualVectorOrbit) {
  const auto& g = g2();
  FormCodec c(7, 6);
  auto top = LinearForm<Zp>::dual_basis(Field::prime(7), 6, g.rs.parse("3a+2b"));
  auto id = g.part.orbit_id[c.pack(top)];
  EXPECT_EQ(g.part.sizes.at(id), 7u * 7 * 7 * 7);
}

TEST(Oracle, EquationSystemsUseDerivedCubic) {
  const auto& g = g2();
  for (auto [x1, x2] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}, {2, 1}, {3, 2}}) {
    auto derived = g2_equation_check(g.sc, g.part, x1, x2, kDerivedCubicCoefficient);
    EXPECT_TRUE(derived.pass()) << x1 << "," << x2;
    EXPECT_EQ(derived.system1_mismatches, 0u);
    auto printed = g2_equation_check(g.sc, g.part, x1, x2, kPrintedCubicCoefficient);
    EXPECT_FALSE(printed.pass()) << x1 << "," << x2;
  }
  EXPECT_THROW(g2_equation_check(g.sc, g.part, 0, 1), std::invalid_argument);
}

TEST(Oracle, RejectsBadModuli) {
  const auto& g = g2();
  EXPECT_THROW(orbit_partition(g.sc, 9), std::invalid_argument);
  EXPECT_THROW(orbit_partition(g.sc, 5), CharacteristicError);
  auto f4 = RootSystem::build(SystemKind::F4);
  auto sc = StructureConstants::compute(f4);
  EXPECT_THROW(orbit_partition(sc, 13), std::invalid_argument);
}

TEST(Oracle, F4ProbeFindsNoCollisionsAndIsThreadIndependent) {
  auto rs = RootSystem::build(SystemKind::F4);
  auto sc = StructureConstants::compute(rs);
  auto opt = default_classify_options(rs);
  auto fs = final_S(sc, opt);
  auto forms = random_canonical_forms(sc, fs, opt.twist, 13, 4, 5);
  ASSERT_EQ(forms.size(), 4u);
  DistinctnessOptions d;
  d.q = 13;
  d.forms = 4;
  d.actions = 400;
  d.seed = 9;
  auto one = distinctness_probe(sc, forms, d);
  d.threads = 3;
  auto three = distinctness_probe(sc, forms, d);
  EXPECT_EQ(one.checks, 1600u);
  EXPECT_EQ(one.violations, 0u);
  EXPECT_GT(one.landed_in_s, 0u);
  EXPECT_EQ(one.checks, three.checks);
  EXPECT_EQ(one.landed_in_s, three.landed_in_s);
  EXPECT_EQ(one.violations, three.violations);
}
