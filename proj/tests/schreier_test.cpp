#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "isooe/random.hpp"
#include "isooe/schreier.hpp"
#include "oracles.hpp"

namespace isooe::schreier {
namespace {

const GroupPreset kF2 = GroupPreset::free(2);

ReducedWord w2(std::string_view s) { return parse_word(kF2, s); }

Permutation cycle_shift(int n, int k) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + k) % n;
  return p;
}

CosetAction swap_action() { return CosetAction({{1, 0}, {1, 0}}); }

TEST(CosetAction, ActsRightToLeft) {
  const auto act = five_point_action();
  EXPECT_EQ(act.act(w2("a"), 0), 1);
  EXPECT_EQ(act.act(w2("b"), 0), 2);
  EXPECT_EQ(act.act(w2("ab"), 0), 3);
  EXPECT_EQ(act.act(w2("A"), 0), 4);
  EXPECT_EQ(act.act(w2("1"), 3), 3);
}

TEST(CosetAction, ActionLaw) {
  const auto act = random_transitive_action(7, 2, 5);
  for (const auto& u : ball(kF2, 2)) {
    for (const auto& v : ball(kF2, 2)) {
      for (int p = 0; p < 7; ++p) {
        ASSERT_EQ(act.act(multiply(u, v), p), act.act(u, act.act(v, p)));
      }
    }
  }
}

TEST(CosetAction, RejectsNonPermutations) {
  EXPECT_THROW(CosetAction({{0, 0}, {1, 0}}), InvalidAction);
  EXPECT_THROW(CosetAction({{0, 1}, {0, 1, 2}}), InvalidAction);
  EXPECT_THROW(CosetAction({{0, 2}}), InvalidAction);
  EXPECT_THROW(CosetAction(std::vector<Permutation>{}), InvalidAction);
}

TEST(CosetAction, JsonRoundTrip) {
  const auto act = five_point_action();
  const auto back = CosetAction::from_json(act.to_json());
  EXPECT_EQ(back.size(), 5);
  EXPECT_EQ(back.generator(0), act.generator(0));
  EXPECT_EQ(back.generator(1), act.generator(1));
  EXPECT_THROW(CosetAction::from_json(nlohmann::json{{"n", 3}}), Error);
}

TEST(Predicates, FivePoint) {
  const auto act = five_point_action();
  EXPECT_FALSE(is_bipartite(act));
  EXPECT_TRUE(even_transitive(act));
  EXPECT_TRUE(odd_stabilizer_reachable(act));
  EXPECT_TRUE(is_normal(act));
  EXPECT_EQ(even_orbit_size(act), 5);
}

TEST(Predicates, SwapIsBipartite) {
  const auto act = swap_action();
  EXPECT_TRUE(is_bipartite(act));
  EXPECT_FALSE(even_transitive(act));
  EXPECT_FALSE(odd_stabilizer_reachable(act));
  EXPECT_EQ(even_orbit_size(act), 1);
}

TEST(Predicates, EvenCycleIsBipartite) {
  const CosetAction act({cycle_shift(6, 1), cycle_shift(6, 1)});
  EXPECT_TRUE(is_bipartite(act));
  EXPECT_EQ(even_orbit_size(act), 3);
}

TEST(Predicates, OddCycleIsEvenTransitive) {
  const CosetAction act({cycle_shift(9, 1), cycle_shift(9, 1)});
  EXPECT_FALSE(is_bipartite(act));
  EXPECT_TRUE(even_transitive(act));
}

TEST(Predicates, FixedGeneratorGivesOddStabilizer) {
  const CosetAction act({cycle_shift(3, 1), {0, 1, 2}});
  EXPECT_TRUE(odd_stabilizer_reachable(act));
  EXPECT_FALSE(is_bipartite(act));
}

TEST(Predicates, NonNormalSubgroup) {
  // a = (0 1), b = (1 2): the stabilizer of 0 in S3 is not normal.
  const CosetAction act({{1, 0, 2}, {0, 2, 1}});
  EXPECT_FALSE(is_normal(act));
  EXPECT_FALSE(detail::is_normal_by_centralizer(act));
}

TEST(Predicates, NonTransitiveRejected) {
  const CosetAction act({{1, 0, 2, 3}, {1, 0, 3, 2}});
  EXPECT_FALSE(act.transitive());
  EXPECT_THROW(is_bipartite(act), NotTransitive);
  EXPECT_THROW(is_normal(act), NotTransitive);
  EXPECT_THROW(lemma_even_crosscheck(act), NotTransitive);
}

TEST(PredicatesProperty, NormalityMethodsAgree) {
  int normal_seen = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const int n = 1 + static_cast<int>(seed % 12);
    const auto act = random_transitive_action(n, 2, seed);
    const bool normal = is_normal(act);
    normal_seen += normal;
    ASSERT_EQ(normal, detail::is_normal_by_centralizer(act)) << "seed " << seed;
  }
  EXPECT_GT(normal_seen, 0);
  // Regular actions of cyclic groups are normal.
  for (int n : {2, 7, 30, 81}) {
    const CosetAction act({cycle_shift(n, 1), cycle_shift(n, n - 1)});
    EXPECT_TRUE(is_normal(act));
    EXPECT_TRUE(detail::is_normal_by_centralizer(act));
  }
}

TEST(PredicatesProperty, LemmaEquivalenceOnRandomActions) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 40);
    const int rank = 1 + static_cast<int>(seed % 3);
    const auto act = random_transitive_action(n, rank, seed);
    const auto report = lemma_even_crosscheck(act, false);
    ASSERT_EQ(report.even_transitive, !report.bipartite);
    ASSERT_EQ(report.odd_stabilizer_word_found, !report.bipartite);
    ASSERT_EQ(report.even_orbit_size, report.bipartite ? n / 2 : n);
  }
}

TEST(Spectrum, Fixtures) {
  const auto five = spectral_gap(five_point_action());
  EXPECT_NEAR(five.lambda2_by_value, -0.25, 1e-12);
  EXPECT_NEAR(five.lambda2_by_modulus, 0.25, 1e-12);
  EXPECT_NEAR(five.spectral_gap(), 1.25, 1e-12);

  const auto swap = spectral_gap(swap_action());
  EXPECT_NEAR(swap.lambda2_by_value, -1.0, 1e-12);
  EXPECT_NEAR(swap.lambda2_by_modulus, 1.0, 1e-12);

  const auto nine = spectral_gap(CosetAction({cycle_shift(9, 1), cycle_shift(9, 1)}));
  EXPECT_NEAR(nine.lambda2_by_value, std::cos(2 * std::numbers::pi / 9), 1e-12);
}

TEST(SpectrumProperty, PowerIterationMatchesDense) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto act = random_transitive_action(20 + static_cast<int>(seed) * 7, 2, seed);
    const auto dense = spectral_gap(act);
    const auto power = spectral_gap_power(act);
    EXPECT_NEAR(dense.lambda2_by_value, power.lambda2_by_value, 1e-6) << seed;
    EXPECT_NEAR(dense.lambda2_by_modulus, power.lambda2_by_modulus, 1e-6) << seed;
  }
}

TEST(SpectrumProperty, UnitModulusIffBipartite) {
  int bipartite_seen = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 15);
    const auto act = random_transitive_action(n, 1 + static_cast<int>(seed % 2), seed);
    const auto spec = spectral_gap(act);
    const bool unit = std::abs(spec.lambda2_by_modulus - 1.0) < 1e-9;
    bipartite_seen += is_bipartite(act);
    ASSERT_EQ(unit, is_bipartite(act))
        << "seed " << seed;
  }
  EXPECT_GT(bipartite_seen, 0);
}

TEST(SphereDistribution, PointMassAtZero) {
  const auto d = sphere_distribution(five_point_action(), 0);
  EXPECT_EQ(d, (std::vector<double>{1, 0, 0, 0, 0}));
  EXPECT_NEAR(total_variation_from_uniform(d), 0.8, 1e-15);
}

TEST(SphereDistribution, SwapAlternates) {
  for (int len = 0; len <= 12; ++len) {
    const auto d = sphere_distribution(swap_action(), len);
    EXPECT_EQ(d[len % 2], 1.0);
    EXPECT_EQ(d[1 - len % 2], 0.0);
  }
}

TEST(SphereDistribution, FivePointFixtures) {
  const auto act = five_point_action();
  const auto d3 = sphere_distribution(act, 3);
  const std::vector<double> expected{1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  for (int p = 0; p < 5; ++p) EXPECT_NEAR(d3[p], expected[p], 1e-15);
  EXPECT_NEAR(total_variation_from_uniform(sphere_distribution(act, 12)),
              0.000961912987518840, 1e-15);
}

TEST(SphereDistributionProperty, MatchesEnumerationOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto act = random_transitive_action(3 + static_cast<int>(seed % 6), 2, seed);
    for (int len = 0; len <= 6; ++len) {
      const auto fast = sphere_distribution(act, len);
      const auto slow = oracle::sphere_distribution_by_enumeration(act, len);
      for (int p = 0; p < act.size(); ++p) {
        ASSERT_NEAR(fast[p], slow[p], 1e-12) << "seed " << seed << " len " << len;
      }
    }
  }
}

TEST(SphereDistributionProperty, MassAndParity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto act = random_transitive_action(2 + static_cast<int>(seed % 20), 2, seed);
    const bool bipartite = is_bipartite(act);
    // Color classes of the bipartition, from BFS distance parity.
    std::vector<int> side(act.size(), -1);
    side[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (int x = 0; x < 4; ++x) {
        const int q = act.step(static_cast<Letter>(x), queue[h]);
        if (side[q] < 0) {
          side[q] = 1 - side[queue[h]];
          queue.push_back(q);
        }
      }
    }
    for (int len = 0; len <= 10; ++len) {
      const auto d = sphere_distribution(act, len);
      ASSERT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-12);
      if (!bipartite) continue;
      for (int p = 0; p < act.size(); ++p) {
        if (side[p] != len % 2) ASSERT_EQ(d[p], 0.0);
      }
    }
  }
}

TEST(SphereDistributionProperty, NormalActionIsVertexTransitive) {
  const CosetAction cyclic({cycle_shift(8, 1), cycle_shift(8, 3)});
  for (const auto& act : {five_point_action(), cyclic}) {
    ASSERT_TRUE(is_normal(act));
    for (int len = 0; len <= 8; ++len) {
      auto base = sphere_distribution(act, len);
      std::sort(base.begin(), base.end());
      for (int q = 1; q < act.size(); ++q) {
        auto other = sphere_distribution(act, len, q);
        std::sort(other.begin(), other.end());
        for (std::size_t k = 0; k < base.size(); ++k) {
          ASSERT_NEAR(base[k], other[k], 1e-14);
        }
      }
    }
  }
}

TEST(Crosscheck, ReportFields) {
  const auto r = lemma_even_crosscheck(five_point_action());
  EXPECT_TRUE(r.transitive);
  EXPECT_EQ(r.index, 5);
  EXPECT_FALSE(r.bipartite);
  EXPECT_TRUE(r.normal);
  EXPECT_NEAR(r.spectral_gap, 1.25, 1e-12);
  const auto j = r.to_json();
  EXPECT_EQ(j.at("evenOrbitSize"), 5);
  EXPECT_EQ(j.at("oddStabilizerWordFound"), true);
}

TEST(RandomAction, DeterministicAndTransitive) {
  const auto a = random_transitive_action(12, 2, 99);
  const auto b = random_transitive_action(12, 2, 99);
  EXPECT_EQ(a.generator(0), b.generator(0));
  EXPECT_EQ(a.generator(1), b.generator(1));
  EXPECT_TRUE(a.transitive());
}

TEST(CycleTower, SizesAndGaps) {
  CycleTowerShape shape;
  shape.depth = 4;
  const auto levels = cycle_tower(shape);
  ASSERT_EQ(levels.size(), 4U);
  int size = 3;
  for (const auto& level : levels) {
    EXPECT_EQ(level.size(), size);
    EXPECT_FALSE(is_bipartite(level));
    EXPECT_TRUE(is_normal(level));
    EXPECT_NEAR(spectral_gap(level).spectral_gap(),
                1.0 - std::cos(2 * std::numbers::pi / size), 1e-9);
    size *= 3;
  }
}

TEST(CycleTower, Errors) {
  CycleTowerShape bad;
  bad.exponents = {3, 6};
  EXPECT_THROW(cycle_tower(bad), InvalidAction);
  CycleTowerShape huge;
  huge.depth = 30;
  EXPECT_THROW(cycle_tower(huge), CapExceeded);
}

}  // namespace
}  // namespace isooe::schreier
