#include <gtest/gtest.h>

#include <map>
#include <set>

#include "flaghom/weyl.hpp"
#include "oracles.hpp"

using namespace flaghom;

namespace {

// Lexicographically least reduced word by brute force over words of the
// given length.
Word lex_least_reduced(const RootSystem& sys, const WeylElement& w) {
  const int len = w.length();
  Word cur(len, 1);
  for (;;) {
    if (is_reduced(sys, cur) && element_from_word(sys, cur) == w) return cur;
    int k = len - 1;
    while (k >= 0 && cur[k] == sys.rank()) cur[k--] = 1;
    if (k < 0) break;
    ++cur[k];
  }
  ADD_FAILURE() << "no reduced word found";
  return {};
}

// s_beta(x) = x - <beta^vee, x> beta.
Root reflect_by(const RootSystem& sys, const Root& beta, const Root& x) {
  const Root cv = sys.coroot(beta);
  int pairing = 0;
  for (int i = 1; i <= sys.rank(); ++i)
    for (int j = 1; j <= sys.rank(); ++j) pairing += cv[i] * sys.cartan()(i, j) * x[j];
  return x - pairing * beta;
}

bool is_reflection_action(const RootSystem& sys, const detail::Action& a) {
  for (const Root& beta : sys.positive_roots()) {
    bool match = true;
    for (int j = 1; j <= sys.rank() && match; ++j)
      if (detail::column(a, sys.rank(), j) != reflect_by(sys, beta, sys.simple_root(j))) match = false;
    if (match) return true;
  }
  return false;
}

}  // namespace

TEST(Weyl, GroupOrders) {
  EXPECT_EQ(enumerate_weyl(RootSystem::standard(Family::A, 3)).size(), 24u);
  EXPECT_EQ(enumerate_weyl(RootSystem::standard(Family::B, 3)).size(), 48u);
  EXPECT_EQ(enumerate_weyl(RootSystem::standard(Family::G, 2)).size(), 12u);
  EXPECT_EQ(enumerate_weyl(RootSystem::standard(Family::D, 4)).size(), 192u);
  EXPECT_EQ(enumerate_weyl(RootSystem::standard(Family::F, 4)).size(), 1152u);
}

TEST(Weyl, LengthGeneratingFunction) {
  // sum_w t^l(w) = prod (1 + t + ... + t^(e_i)) for A3, exponents 1, 2, 3.
  const auto all = enumerate_weyl(RootSystem::standard(Family::A, 3));
  std::vector<int> counts(7, 0);
  for (const auto& w : all) ++counts[w.length()];
  EXPECT_EQ(counts, (std::vector<int>{1, 3, 5, 6, 5, 3, 1}));
}

TEST(Weyl, TooLargeGroupRefused) {
  EXPECT_THROW(enumerate_weyl(RootSystem::standard(Family::E, 8)), Unsupported);
  EXPECT_NO_THROW(enumerate_weyl(RootSystem::standard(Family::E, 8), 2));
}

TEST(Weyl, CanonicalWordIsLexLeastReduced) {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 3}, {Family::G, 2}}) {
    const auto sys = RootSystem::standard(f, r);
    for (const auto& w : enumerate_weyl(sys)) {
      EXPECT_EQ(w.word(), lex_least_reduced(sys, w));
      EXPECT_EQ(element_from_word(sys, w.word()).word(), w.word());
    }
  }
}

TEST(Weyl, EnumerationOrderIsLengthThenWord) {
  const auto all = enumerate_weyl(RootSystem::standard(Family::B, 3));
  for (std::size_t k = 1; k < all.size(); ++k) {
    const auto& a = all[k - 1];
    const auto& b = all[k];
    EXPECT_TRUE(a.length() < b.length() || (a.length() == b.length() && a.word() < b.word()));
  }
}

TEST(Weyl, MultiplyAndInverse) {
  const auto sys = RootSystem::standard(Family::C, 3);
  const auto all = enumerate_weyl(sys);
  for (std::size_t i = 0; i < all.size(); i += 5)
    for (std::size_t j = 0; j < all.size(); j += 7) {
      const auto xy = multiply(sys, all[i], all[j]);
      Word concat = all[i].word();
      concat.insert(concat.end(), all[j].word().begin(), all[j].word().end());
      EXPECT_EQ(xy, element_from_word(sys, concat));
    }
  for (const auto& w : all) {
    EXPECT_TRUE(multiply(sys, w, inverse(sys, w)).is_identity());
    EXPECT_EQ(inverse(sys, w).length(), w.length());
  }
}

TEST(Weyl, InversionSetSizeIsLength) {
  const auto sys = RootSystem::standard(Family::F, 4);
  for (const auto& w : enumerate_weyl(sys, 6)) {
    const auto inv = inversion_set(sys, w);
    EXPECT_EQ(static_cast<int>(inv.size()), w.length());
    std::set<std::vector<int>> distinct;
    for (const auto& r : inv) {
      EXPECT_TRUE(r.is_positive());
      // Pi_w: positive roots that w^{-1} makes negative.
      EXPECT_TRUE(inverse(sys, w).apply(r).is_negative());
      distinct.insert(r.coeffs());
    }
    EXPECT_EQ(distinct.size(), inv.size());
  }
}

TEST(Weyl, ReducedWords) {
  const auto sys = RootSystem::standard(Family::A, 2);
  EXPECT_TRUE(is_reduced(sys, Word{1, 2, 1}));
  EXPECT_FALSE(is_reduced(sys, Word{1, 1}));
  EXPECT_FALSE(is_reduced(sys, Word{1, 2, 1, 2}));
  EXPECT_THROW(is_reduced(sys, Word{3}), InvalidArgument);
}

// Covers from deletions versus covers defined by length and reflections.
TEST(BruhatCovers, MatchReflectionDefinition) {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 3}, {Family::G, 2}}) {
    const auto sys = RootSystem::standard(f, r);
    const auto all = enumerate_weyl(sys);
    for (const auto& w : all) {
      std::set<Word> expected;
      for (const auto& v : all) {
        if (v.length() + 1 != w.length()) continue;
        detail::Action a = inverse(sys, v).action();
        for (int s : w.word()) detail::right_multiply(sys, a, s);
        if (is_reflection_action(sys, a)) expected.insert(v.word());
      }
      std::set<Word> got;
      for (const auto& p : bruhat_covers(sys, w)) {
        got.insert(p.w_prime.word());
        EXPECT_TRUE(p.beta.is_positive());
        EXPECT_TRUE(p.gamma.is_positive());
        // w = s_beta w' and w = w' s_gamma.
        for (int j = 1; j <= sys.rank(); ++j) {
          const Root x = sys.simple_root(j);
          EXPECT_EQ(p.w.apply(x), reflect_by(sys, p.beta, p.w_prime.apply(x)));
          EXPECT_EQ(p.w.apply(x), p.w_prime.apply(reflect_by(sys, p.gamma, x)));
        }
      }
      EXPECT_EQ(got, expected) << w.word_string();
    }
  }
}

TEST(BruhatCovers, TypeAMatchesPermutationOracle) {
  for (int n = 3; n <= 5; ++n) {
    const auto sys = RootSystem::standard(Family::A, n - 1);
    for (const auto& w : enumerate_weyl(sys)) {
      std::set<oracle::Perm> expected;
      for (const auto& [q, ij] : oracle::covers_by_length(*w.one_line())) expected.insert(q);
      std::set<oracle::Perm> got;
      for (const auto& p : bruhat_covers(sys, w)) got.insert(*p.w_prime.one_line());
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(TypeA, OneLineMatchesActionAndOracle) {
  const auto sys = RootSystem::standard(Family::A, 4);
  for (const auto& w : enumerate_weyl(sys)) {
    EXPECT_TRUE(w.one_line_matches_action());
    EXPECT_EQ(*w.one_line(), oracle::perm_of_word(w.word(), 5));
    EXPECT_EQ(oracle::inversions(*w.one_line()), w.length());
    EXPECT_EQ(element_from_one_line(sys, *w.one_line()), w);
  }
}

TEST(TypeA, CodeSpectrumRoundTrip) {
  const auto sys = RootSystem::standard(Family::A, 4);
  for (const auto& p : oracle::all_perms(5)) {
    const auto spec = code_spectrum(p);
    EXPECT_EQ(spec, oracle::spectrum(p));
    EXPECT_EQ(permutation_from_code_spectrum(spec, 5), p);
    EXPECT_EQ(static_cast<int>(spec.size()), oracle::inversions(p));
    EXPECT_EQ(*from_code_spectrum(sys, spec).one_line(), p);
  }
  EXPECT_EQ(lehmer_code(std::vector<int>{3, 1, 2}), (std::vector<int>{2, 0, 0}));
  EXPECT_THROW(permutation_from_code_spectrum(std::vector<int>{2, 1}, 4), InvalidArgument);
  EXPECT_THROW(permutation_from_code_spectrum(std::vector<int>{3, 3}, 4), InvalidArgument);
  EXPECT_THROW(validate_permutation(std::vector<int>{1, 3, 7, 2, 8, 2, 5, 4, 6}), InvalidArgument);
}

TEST(TypeA, CoverOracle) {
  const std::vector<int> w{1, 3, 7, 5, 8, 2, 9, 4, 6};
  const std::vector<int> wp{1, 3, 7, 2, 8, 5, 9, 4, 6};
  const auto ij = covers_oracle_typeA(w, wp);
  ASSERT_TRUE(ij);
  EXPECT_EQ(*ij, std::make_pair(4, 6));
  EXPECT_FALSE(covers_oracle_typeA(wp, w));
  // 1 ... 3 with 2 in between is not a cover.
  EXPECT_FALSE(covers_oracle_typeA(std::vector<int>{3, 2, 1}, std::vector<int>{1, 2, 3}));
}

TEST(Parabolic, MinimalRepresentativeCounts) {
  // |W^Theta| = |W| / |W_Theta|.
  const auto sys = RootSystem::standard(Family::A, 3);
  EXPECT_EQ(minimal_representatives(sys, ThetaSubset(3, {2, 3})).size(), 4u);
  EXPECT_EQ(minimal_representatives(sys, ThetaSubset(3, {1, 3})).size(), 6u);
  EXPECT_EQ(minimal_representatives(sys, ThetaSubset::all(3)).size(), 1u);
  const auto b3 = RootSystem::standard(Family::B, 3);
  EXPECT_EQ(minimal_representatives(b3, ThetaSubset(3, {1, 2})).size(), 8u);
}

TEST(Parabolic, LongestRepresentative) {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 3}, {Family::G, 2}}) {
    const auto sys = RootSystem::standard(f, r);
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      const auto theta = ThetaSubset::from_mask(r, mask);
      const auto reps = minimal_representatives(sys, theta);
      int longest = 0;
      for (const auto& w : reps) longest = std::max(longest, w.length());
      const auto top = longest_minimal_representative(sys, theta);
      EXPECT_TRUE(is_minimal_representative(top, theta));
      EXPECT_EQ(top.length(), longest);
    }
  }
}

TEST(Parabolic, ThetaSubset) {
  const auto t = ThetaSubset::from_complement(5, {4, 2});
  EXPECT_EQ(t.included(), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(t.complement(), (std::vector<int>{2, 4}));
  EXPECT_EQ(ThetaSubset(3, {3, 1, 3}).included(), (std::vector<int>{1, 3}));
  EXPECT_THROW(ThetaSubset(3, {4}), InvalidArgument);
  EXPECT_THROW(ThetaSubset(3, {0}), InvalidArgument);
}
