#include <gtest/gtest.h>

#include <random>
#include <set>

#include "isooe/random.hpp"
#include "isooe/words.hpp"
#include "oracles.hpp"

namespace isooe {
namespace {

const GroupPreset kF2 = GroupPreset::free(2);
const GroupPreset kW4 = GroupPreset::coxeter(4);

ReducedWord w2(std::string_view s) { return parse_word(kF2, s); }

std::vector<Letter> random_letters(const GroupPreset& preset, int len,
                                   KeyedStream& rng) {
  std::vector<Letter> out(len);
  for (auto& x : out) x = static_cast<Letter>(rng() % preset.degree());
  return out;
}

TEST(Words, MultiplyCancels) {
  EXPECT_EQ(multiply(w2("ab"), w2("Ba")), w2("aa"));
  EXPECT_EQ(multiply(w2("ab"), w2("BA")), ReducedWord(kF2));
  EXPECT_EQ(to_text(multiply(w2("ab"), w2("Ba"))), "aa");
  EXPECT_EQ(multiply(parse_word(kW4, "ab"), parse_word(kW4, "bc")),
            parse_word(kW4, "ac"));
}

TEST(Words, InvertReversesAndFlips) {
  EXPECT_EQ(invert(w2("abA")), w2("aBA"));
  EXPECT_EQ(invert(parse_word(kW4, "abc")), parse_word(kW4, "cba"));
}

TEST(Words, LengthAndParity) {
  EXPECT_EQ(length(w2("1")), 0U);
  EXPECT_TRUE(is_even(w2("1")));
  EXPECT_EQ(length(w2("aB")), 2U);
  EXPECT_FALSE(is_even(w2("aBa")));
}

TEST(Words, ParseRejectsBadInput) {
  EXPECT_THROW(parse_word(kF2, "ac"), ParseError);
  EXPECT_THROW(parse_word(kF2, "a1"), ParseError);
  EXPECT_THROW(parse_word(kF2, ""), ParseError);
}

TEST(Words, PresetMismatchThrows) {
  EXPECT_THROW(multiply(w2("a"), parse_word(kW4, "a")), PresetMismatch);
}

TEST(Words, PresetRankLimits) {
  EXPECT_THROW(GroupPreset::free(0), std::invalid_argument);
  EXPECT_THROW(GroupPreset::coxeter(27), std::invalid_argument);
  EXPECT_EQ(to_string(kF2), "F2");
  EXPECT_EQ(to_string(kW4), "W4");
}

TEST(Words, BallSizes) {
  EXPECT_EQ(ball(kF2, 1).size(), 5U);
  EXPECT_EQ(ball(kF2, 2).size(), 17U);
  EXPECT_EQ(ball(kW4, 2).size(), 17U);
  EXPECT_EQ(ball_size(kF2, 2), 17U);
  EXPECT_EQ(ball_size(GroupPreset::free(3), 200), UINT64_MAX);
}

TEST(Words, BallCapThrows) {
  EXPECT_THROW(ball(kF2, 10, 1000), CapExceeded);
}

TEST(Words, BallMatchesEnumerationOracle) {
  for (const auto& p : {kF2, kW4, GroupPreset::free(1), GroupPreset::coxeter(3)}) {
    for (int r = 0; r <= 5; ++r) {
      EXPECT_EQ(ball(p, r).size(), oracle::count_ball_by_enumeration(p, r))
          << to_string(p) << " r=" << r;
    }
  }
}

TEST(WordsProperty, SphereSizeFormula) {
  for (const auto& p : {kF2, kW4, GroupPreset::free(3), GroupPreset::coxeter(3)}) {
    const auto words = ball(p, 8);
    std::vector<std::uint64_t> counts(9, 0);
    for (const auto& w : words) ++counts[w.length()];
    std::uint64_t expected = 1;
    for (int k = 0; k <= 8; ++k) {
      EXPECT_EQ(counts[k], expected) << to_string(p) << " k=" << k;
      EXPECT_EQ(sphere_size(p, k), expected);
      expected = k == 0 ? p.degree() : expected * (p.degree() - 1);
    }
  }
}

TEST(WordsProperty, InverseOnBall) {
  for (const auto& p : {kF2, kW4}) {
    const ReducedWord e(p);
    for (const auto& w : ball(p, 6)) {
      ASSERT_EQ(multiply(w, invert(w)), e);
      ASSERT_EQ(multiply(invert(w), w), e);
    }
  }
}

TEST(WordsProperty, ParityIsHomomorphism) {
  KeyedStream rng(11);
  for (const auto& p : {kF2, kW4}) {
    for (int t = 0; t < 2000; ++t) {
      const auto u = ReducedWord::from_letters(
          p, random_letters(p, static_cast<int>(rng() % 10), rng));
      const auto v = ReducedWord::from_letters(
          p, random_letters(p, static_cast<int>(rng() % 10), rng));
      ASSERT_EQ(is_even(multiply(u, v)), is_even(u) == is_even(v));
    }
  }
}

TEST(WordsProperty, ReductionIsConfluent) {
  KeyedStream rng(12);
  for (const auto& p : {kF2, kW4, GroupPreset::free(1)}) {
    for (int t = 0; t < 3000; ++t) {
      const auto seq = random_letters(p, static_cast<int>(rng() % 13), rng);
      const auto expected = oracle::fixpoint_reduce(p, seq);
      ASSERT_EQ(ReducedWord::from_letters(p, seq).letters(), expected);
      // Any split point gives the same product.
      const std::size_t cut = seq.size() == 0 ? 0 : rng() % (seq.size() + 1);
      const auto left = ReducedWord::from_letters(
          p, std::span(seq).first(cut));
      const auto right = ReducedWord::from_letters(
          p, std::span(seq).subspan(cut));
      ASSERT_EQ(multiply(left, right).letters(), expected);
    }
  }
}

TEST(WordsProperty, MultiplyIsAssociative) {
  KeyedStream rng(13);
  for (int t = 0; t < 2000; ++t) {
    const auto u = ReducedWord::from_letters(kF2, random_letters(kF2, 6, rng));
    const auto v = ReducedWord::from_letters(kF2, random_letters(kF2, 6, rng));
    const auto w = ReducedWord::from_letters(kF2, random_letters(kF2, 6, rng));
    ASSERT_EQ(multiply(multiply(u, v), w), multiply(u, multiply(v, w)));
  }
}

TEST(Words, TextRoundTrip) {
  for (const auto& p : {kF2, kW4}) {
    for (const auto& w : ball(p, 4)) {
      ASSERT_EQ(parse_word(p, to_text(w)), w);
    }
  }
  EXPECT_EQ(to_text(ReducedWord(kF2)), "1");
  EXPECT_EQ(parse_word(kW4, "ABba"), parse_word(kW4, "1"));
}

TEST(Words, PairsRoundTrip) {
  const auto w = w2("aBBa");
  const auto pairs = w.pairs();
  ASSERT_EQ(pairs.size(), 4U);
  EXPECT_EQ(pairs[1], (std::pair<int, int>{1, -1}));
  EXPECT_EQ(ReducedWord::from_pairs(kF2, pairs), w);
  const std::vector<std::pair<int, int>> cancel{{0, 1}, {1, 1}, {1, -1}};
  EXPECT_EQ(ReducedWord::from_pairs(kF2, cancel), w2("a"));
}

TEST(Words, ShortlexOrderMatchesBall) {
  const auto words = ball(kF2, 4);
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
  std::set<ReducedWord> unique(words.begin(), words.end());
  EXPECT_EQ(unique.size(), words.size());
}

TEST(BallIndex, AgreesWithBallOrder) {
  for (const auto& p : {kF2, kW4, GroupPreset::free(1)}) {
    const BallIndex index(p, 5);
    const auto words = ball(p, 5);
    ASSERT_EQ(index.size(), words.size());
    for (BallIndex::Index i = 0; i < index.size(); ++i) {
      ASSERT_EQ(index.word_at(i), words[i]);
      ASSERT_EQ(index.index_of(words[i]), i);
      ASSERT_EQ(index.depth(i), static_cast<int>(words[i].length()));
    }
  }
}

TEST(BallIndex, RightMultiplyAndChildren) {
  const BallIndex index(kF2, 4);
  for (BallIndex::Index i = 0; i < index.size(); ++i) {
    const auto w = index.word_at(i);
    for (int x = 0; x < 4; ++x) {
      auto wx = w;
      wx.append(static_cast<Letter>(x));
      const auto j = index.right_multiply(i, static_cast<Letter>(x));
      if (wx.length() > 4) {
        ASSERT_EQ(j, BallIndex::npos);
      } else {
        ASSERT_EQ(j, index.index_of(wx));
      }
    }
    if (index.depth(i) < 4) {
      for (int t = 0; t < index.forward_degree(i); ++t) {
        const auto c = index.child_by_rank(i, t);
        ASSERT_EQ(index.parent(c), i);
      }
    }
  }
}

TEST(BallIndex, IndicesIndependentOfRadius) {
  const BallIndex small(kW4, 3);
  const BallIndex large(kW4, 6);
  for (BallIndex::Index i = 0; i < small.size(); ++i) {
    ASSERT_EQ(small.word_at(i), large.word_at(i));
  }
  EXPECT_EQ(small.index_of(parse_word(kW4, "abcab")), BallIndex::npos);
  EXPECT_EQ(large.size_upto(3), small.size());
}

}  // namespace
}  // namespace isooe
