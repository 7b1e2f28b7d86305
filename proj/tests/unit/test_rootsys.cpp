#include <gtest/gtest.h>

#include <algorithm>

#include "nilorb/rootsys.hpp"

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

}  // namespace

TEST(RootSystem, F4HasTwentyFourRootsInLexOrder) {
  const std::vector<std::string> expected = {
      "a4",           "a3",           "a3+a4",          "a2",             "a2+a3",          "a2+a3+a4",
      "a2+2a3",       "a2+2a3+a4",    "a2+2a3+2a4",     "a1",             "a1+a2",          "a1+a2+a3",
      "a1+a2+a3+a4",  "a1+a2+2a3",    "a1+a2+2a3+a4",   "a1+a2+2a3+2a4",  "a1+2a2+2a3",     "a1+2a2+2a3+a4",
      "a1+2a2+2a3+2a4", "a1+2a2+3a3+a4", "a1+2a2+3a3+2a4", "a1+2a2+4a3+2a4", "a1+3a2+4a3+2a4", "2a1+3a2+4a3+2a4"};
  ASSERT_EQ(f4().size(), 24);
  for (int i = 0; i < 24; ++i) EXPECT_EQ(f4().name(i), expected[i]) << "index " << i;
  EXPECT_EQ(f4().highest_height(), 11);
}

TEST(RootSystem, G2HasSixRoots) {
  const std::vector<std::string> expected = {"b", "a", "a+b", "2a+b", "3a+b", "3a+2b"};
  ASSERT_EQ(g2().size(), 6);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(g2().name(i), expected[i]);
  EXPECT_EQ(g2().highest_height(), 5);
}

TEST(RootSystem, LexOrderIsTotalAndRefinesThePartialOrder) {
  for (const auto* rs : {&f4(), &g2()})
    for (int i = 0; i < rs->size(); ++i)
      for (int j = 0; j < rs->size(); ++j) {
        if (i == j) continue;
        bool gt = lex_greater(rs->root(i).coeffs, rs->root(j).coeffs);
        bool lt = lex_greater(rs->root(j).coeffs, rs->root(i).coeffs);
        EXPECT_NE(gt, lt);
        EXPECT_EQ(gt, i > j);
        if (rs->diff_decomposable(j, i)) EXPECT_GT(i, j);
      }
  EXPECT_GT(f4().parse("a1"), f4().parse("a2+2a3+2a4"));
}

TEST(RootSystem, SumTable) {
  const auto& rs = f4();
  EXPECT_EQ(rs.sum(rs.parse("a3"), rs.parse("a4")), rs.parse("a3+a4"));
  EXPECT_EQ(rs.sum(rs.parse("a2"), rs.parse("a4")), -1);
  EXPECT_EQ(rs.sum(rs.parse("a2"), rs.parse("a3")), rs.parse("a2+a3"));
  for (int i = 0; i < rs.size(); ++i)
    for (int j = 0; j < rs.size(); ++j) {
      EXPECT_EQ(rs.sum(i, j), rs.sum(j, i));
      if (rs.sum(i, j) >= 0) {
        const auto& s = rs.root(rs.sum(i, j)).coeffs;
        for (int k = 0; k < 4; ++k) EXPECT_EQ(s[k], rs.root(i).coeffs[k] + rs.root(j).coeffs[k]);
      }
    }
}

// The upper-left corner of the difference table: roots without a1.
TEST(RootSystem, DifferenceTableFragmentMatchesCellForCell) {
  const auto& rs = f4();
  // "*" marks a cell whose difference is itself a positive root.
  const std::vector<std::vector<std::string>> expected = {
      {"0", "", "a3*", "", "", "a2+a3*", "", "a2+2a3*", "a2+2a3+a4*"},
      {"", "0", "a4*", "", "a2*", "a2+a4", "a2+a3*", "a2+a3+a4*", "a2+a3+2a4"},
      {"", "", "0", "", "", "a2*", "", "a2+a3*", "a2+a3+a4*"},
      {"", "", "", "0", "a3*", "a3+a4*", "2a3", "2a3+a4", "2a3+2a4"},
      {"", "", "", "", "0", "a4*", "a3*", "a3+a4*", "a3+2a4"},
      {"", "", "", "", "", "0", "", "a3*", "a3+a4*"},
      {"", "", "", "", "", "", "0", "a4*", "2a4"},
      {"", "", "", "", "", "", "", "0", "a4*"},
      {"", "", "", "", "", "", "", "", "0"},
  };
  for (int i = 0; i < 9; ++i) {
    ASSERT_EQ(rs.root(i).coeffs[0], 0);
    for (int j = 0; j < 9; ++j) {
      auto cell = table_cell(rs, i, j);
      std::string got = cell.text + (cell.orange ? "*" : "");
      EXPECT_EQ(got, expected[i][j]) << rs.name(i) << " / " << rs.name(j);
    }
  }
  EXPECT_EQ(rs.root(9).coeffs[0], 1);
}

TEST(RootSystem, CellsBelowDiagonalAreBlank) {
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < i; ++j) EXPECT_EQ(table_cell(f4(), i, j).text, "");
}

TEST(RootSystem, SingularSets) {
  const auto& rs = f4();
  auto s = rs.singular_set(rs.parse("a2+2a3"));
  EXPECT_EQ(s, (std::vector<int>{rs.parse("a3"), rs.parse("a2+a3")}));
  EXPECT_TRUE(rs.singular_set(rs.parse("a4")).empty());
  const auto& g = g2();
  auto t = g.singular_set(g.parse("3a+2b"));
  std::vector<int> want = {g.parse("b"), g.parse("a+b"), g.parse("2a+b"), g.parse("3a+b")};
  EXPECT_EQ(t, want);
  for (const auto* r : {&f4(), &g2()})
    for (int gm = 0; gm < r->size(); ++gm) {
      auto sg = r->singular_set(gm);
      EXPECT_EQ(sg.size() % 2, 0u);
      for (int a : sg) EXPECT_NE(std::find(sg.begin(), sg.end(), r->diff(a, gm)), sg.end());
    }
}

TEST(RootSystem, StringBounds) {
  const auto& g = g2();
  EXPECT_EQ(g.string_bound(g.parse("a"), g.parse("a+b")), 1);
  EXPECT_EQ(g.string_bound(g.parse("a"), g.parse("2a+b")), 2);
  EXPECT_EQ(f4().string_bound(f4().parse("a3"), f4().parse("a2+a3")), 1);
  EXPECT_THROW(g.string_bound(0, 0), std::invalid_argument);
}

TEST(RootSystem, ParsingRejectsNonRoots) {
  EXPECT_THROW(f4().parse("a1+a3"), std::invalid_argument);
  EXPECT_THROW(f4().parse("a5"), std::invalid_argument);
  EXPECT_THROW(f4().parse(""), std::invalid_argument);
  EXPECT_THROW(parse_system("e8"), std::invalid_argument);
  EXPECT_EQ(f4().parse(" a1 + 2a2 + 2a3 + a4 "), f4().parse_digits("1221"));
  EXPECT_EQ(g2().parse("3a+2b"), 5);
}
