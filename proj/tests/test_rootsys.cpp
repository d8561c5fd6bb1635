#include <gtest/gtest.h>

#include <random>
#include <set>

#include "flaghom/rootsys.hpp"
#include "oracles.hpp"

using namespace flaghom;

namespace {

struct Case {
  Family family;
  int rank;
};

const std::vector<Case> kCases = {{Family::A, 1}, {Family::A, 2}, {Family::A, 4}, {Family::B, 2}, {Family::B, 3},
                                  {Family::B, 4}, {Family::C, 3}, {Family::C, 4}, {Family::D, 4}, {Family::D, 5},
                                  {Family::F, 4}, {Family::G, 2}};

std::set<std::vector<int>> coeff_set(const std::vector<Root>& roots) {
  std::set<std::vector<int>> s;
  for (const auto& r : roots) s.insert(r.coeffs());
  return s;
}

}  // namespace

TEST(CartanData, MatchesEuclideanRealization) {
  for (const auto& c : kCases) {
    const auto T = oracle::root_table(family_letter(c.family), c.rank);
    EXPECT_EQ(CartanData::standard(c.family, c.rank).matrix(), T.cartan) << family_letter(c.family) << c.rank;
  }
}

TEST(CartanData, Conventions) {
  const auto b2 = CartanData::standard(Family::B, 2);
  EXPECT_EQ(b2.symmetrizer(), (std::vector<int>{2, 1}));
  EXPECT_EQ(b2(1, 2), -1);
  EXPECT_EQ(b2(2, 1), -2);
  const auto g2 = CartanData::standard(Family::G, 2);
  EXPECT_EQ(g2.symmetrizer(), (std::vector<int>{1, 3}));
  EXPECT_EQ(g2(1, 2), -3);
  EXPECT_EQ(g2(2, 1), -1);
  const auto c3 = CartanData::standard(Family::C, 3);
  EXPECT_EQ(c3.symmetrizer(), (std::vector<int>{1, 1, 2}));
  const auto f4 = CartanData::standard(Family::F, 4);
  EXPECT_EQ(f4.symmetrizer(), (std::vector<int>{2, 2, 1, 1}));
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(f4.inner(i, j), f4.inner(j, i));
}

TEST(CartanData, RejectsBadInput) {
  EXPECT_THROW(CartanData::standard(Family::G, 3), InvalidArgument);
  EXPECT_THROW(CartanData::standard(Family::E, 5), InvalidArgument);
  EXPECT_THROW(CartanData::standard(Family::D, 2), InvalidArgument);
  EXPECT_THROW(CartanData::standard(Family::A, 0), InvalidArgument);
  EXPECT_THROW(parse_family("Q"), InvalidArgument);
  // Not symmetrizable.
  EXPECT_THROW(CartanData(Family::A, {{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}}), InvalidArgument);
  // Symmetrizable but affine.
  EXPECT_THROW(RootSystem(CartanData(Family::A, {{2, -2}, {-2, 2}})), InvalidArgument);
}

TEST(RootSystem, PositiveRootsMatchOracle) {
  for (const auto& c : kCases) {
    const auto sys = RootSystem::standard(c.family, c.rank);
    const auto T = oracle::root_table(family_letter(c.family), c.rank);
    EXPECT_EQ(coeff_set(sys.positive_roots()), T.positive) << family_letter(c.family) << c.rank;
    EXPECT_EQ(sys.positive_roots().size(), classical_positive_root_count(c.family, c.rank));
  }
}

TEST(RootSystem, PositiveRootCounts) {
  EXPECT_EQ(RootSystem::standard(Family::E, 6).positive_roots().size(), 36u);
  EXPECT_EQ(RootSystem::standard(Family::E, 7).positive_roots().size(), 63u);
  EXPECT_EQ(RootSystem::standard(Family::E, 8).positive_roots().size(), 120u);
  EXPECT_EQ(RootSystem::standard(Family::F, 4).positive_roots().size(), 24u);
  EXPECT_EQ(RootSystem::standard(Family::G, 2).positive_roots().size(), 6u);
}

TEST(RootSystem, OrderedByHeightWithSimpleRootsFirst) {
  const auto sys = RootSystem::standard(Family::B, 3);
  const auto& pos = sys.positive_roots();
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(pos[i - 1], Root::simple(3, i));
  for (std::size_t k = 1; k < pos.size(); ++k) EXPECT_LE(pos[k - 1].height(), pos[k].height());
  EXPECT_EQ(sys.highest_root(), Root({1, 2, 2}));
}

TEST(RootSystem, CorootsMatchOracle) {
  for (const auto& c : kCases) {
    const auto sys = RootSystem::standard(c.family, c.rank);
    const auto T = oracle::root_table(family_letter(c.family), c.rank);
    for (const auto& a : sys.positive_roots()) EXPECT_EQ(sys.coroot(a).coeffs(), T.coroot.at(a.coeffs()));
  }
}

TEST(RootSystem, G2CorootHeights) {
  const auto sys = RootSystem::standard(Family::G, 2);
  // a1 short: coroot of a1 + a2 is a1^vee + 3 a2^vee... checked against the plane model.
  EXPECT_EQ(sys.coroot(Root({1, 1})).coeffs(), (std::vector<int>{1, 3}));
  EXPECT_EQ(sys.coroot(Root({3, 2})).coeffs(), (std::vector<int>{1, 2}));
  EXPECT_EQ(sys.coroot(Root({3, 1})).coeffs(), (std::vector<int>{1, 1}));
}

TEST(RootSystem, ReflectionClosureAndPairing) {
  for (const auto& c : kCases) {
    const auto sys = RootSystem::standard(c.family, c.rank);
    for (const auto& a : sys.positive_roots())
      for (int i = 1; i <= sys.rank(); ++i) {
        const Root b = sys.reflect(i, a);
        EXPECT_TRUE(sys.contains(b.is_positive() ? b : -b));
        EXPECT_EQ(sys.reflect(i, b), a);
        EXPECT_EQ(b, a - sys.pairing(i, a) * Root::simple(sys.rank(), i));
      }
  }
}

TEST(RootSystem, DualSystem) {
  const auto b3 = RootSystem::standard(Family::B, 3);
  const auto c3 = RootSystem::standard(Family::C, 3);
  EXPECT_EQ(b3.dual().family(), Family::C);
  EXPECT_EQ(b3.dual().cartan(), c3.cartan());
  std::set<std::vector<int>> coroots;
  for (const auto& a : b3.positive_roots()) coroots.insert(b3.coroot(a).coeffs());
  EXPECT_EQ(coroots, coeff_set(c3.positive_roots()));
  for (const auto& a : b3.positive_roots()) EXPECT_EQ(c3.coroot(b3.coroot(a)), a);
}

TEST(RootSystem, Multiplicities) {
  const auto sys = RootSystem::standard(Family::B, 2);
  EXPECT_TRUE(sys.split());
  const auto m = sys.with_multiplicities({1, 2, 1, 3});
  EXPECT_FALSE(m.split());
  EXPECT_EQ(m.multiplicity(m.positive_roots()[1]), 2);
  EXPECT_THROW(sys.with_multiplicities({1, 1}), InvalidArgument);
  EXPECT_THROW(sys.with_multiplicities({0, 1, 1, 1}), InvalidArgument);
}

TEST(RootSystem, Components) {
  const auto sys = RootSystem::standard(Family::A, 5);
  EXPECT_EQ(sys.components(std::vector<int>{}), 0);
  EXPECT_EQ(sys.components(std::vector<int>{1, 2, 4}), 2);
  EXPECT_EQ(sys.components(std::vector<int>{1, 3, 5}), 3);
  const auto d4 = RootSystem::standard(Family::D, 4);
  EXPECT_EQ(d4.components(std::vector<int>{1, 3, 4}), 3);
  EXPECT_EQ(d4.components(std::vector<int>{1, 2, 3, 4}), 1);
}

TEST(RootFormatting, ToString) {
  EXPECT_EQ(Root({1, 2, 0}).to_string(), "a1+2a2");
  EXPECT_EQ(Root({0, 0, -1}).to_string(), "-a3");
  EXPECT_EQ(Root({0, 0}).to_string(), "0");
}

TEST(PSums, AgreeWithSubsetEnumeration) {
  std::mt19937_64 rng(7);
  for (const auto& c : kCases) {
    const auto sys = RootSystem::standard(c.family, c.rank);
    std::uniform_int_distribution<int> label(1, c.rank), len(2, 7);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> seq(len(rng));
      for (int& s : seq) s = label(rng);
      const int m = static_cast<int>(seq.size());
      for (int x = 1; x < m; ++x)
        for (int y = x + 1; y <= m; ++y)
          for (int l = 0; l < y - x; ++l)
            EXPECT_EQ(p_sum(sys, seq, x, y, l), oracle::p_sum_subsets(sys.cartan().matrix(), seq, x, y, l));
    }
  }
}

TEST(PSums, Recursion) {
  // P^l_{x,y} = sum_{x<k<y} <d_x^vee, d_k> P^{l-1}_{k,y}.
  const auto sys = RootSystem::standard(Family::G, 2);
  const std::vector<int> seq{1, 2, 1, 2, 2, 1, 2};
  const int m = static_cast<int>(seq.size());
  for (int x = 1; x < m; ++x)
    for (int y = x + 2; y <= m; ++y)
      for (int l = 1; l < y - x; ++l) {
        std::int64_t s = 0;
        for (int k = x + 1; k < y; ++k)
          if (l - 1 < y - k) s += killing(sys, seq, x, k) * p_sum(sys, seq, k, y, l - 1);
        EXPECT_EQ(p_sum(sys, seq, x, y, l), s);
      }
}

TEST(PSums, RejectsBadIndices) {
  const auto sys = RootSystem::standard(Family::A, 2);
  const std::vector<int> seq{1, 2, 1};
  EXPECT_THROW(p_sum(sys, seq, 2, 2, 0), InvalidArgument);
  EXPECT_THROW(p_sum(sys, seq, 1, 4, 0), InvalidArgument);
  EXPECT_THROW(p_sum(sys, seq, 1, 2, 1), InvalidArgument);
}

TEST(ConjugatedRoot, EqualsFoldedReflections) {
  std::mt19937_64 rng(11);
  for (const auto& c : kCases) {
    const auto sys = RootSystem::standard(c.family, c.rank);
    std::uniform_int_distribution<int> label(1, c.rank), len(1, 9);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> seq(len(rng));
      for (int& s : seq) s = label(rng);
      Root folded = sys.simple_root(seq.back());
      for (std::size_t k = seq.size() - 1; k-- > 0;) folded = sys.reflect(seq[k], folded);
      EXPECT_EQ(conjugated_root(sys, seq), folded);
    }
  }
}
