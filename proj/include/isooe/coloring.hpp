#pragma once

// Rainbow 5-colorings of the 4-regular Cayley tree of F_2 = <a, b>, the
// translation action * and the twisted action built from two 5-cycles.
//
// Colors are 1..5. A coloring is never stored: a state is a seed plus a
// translation offset g, and colors are evaluated lazily along geodesics.

#include <array>
#include <cstdint>
#include <string>

#include "isooe/error.hpp"
#include "isooe/schreier.hpp"
#include "isooe/words.hpp"

namespace isooe::coloring {

using Color = int;
inline constexpr int kColors = 5;

class NoSelector : public Error {
 public:
  using Error::Error;
};

class NonUniqueSelector : public Error {
 public:
  using Error::Error;
};

class NotRainbow : public Error {
 public:
  using Error::Error;
};

/// Two 5-cycles A, B on {1..5} with A(i) != B(i) for every i.
class FivePointPermutations {
 public:
  /// A = (1 2 3 4 5), B = (1 3 5 2 4).
  FivePointPermutations();
  /// Images on {1..5}, i.e. a[i-1] = A(i). Throws std::invalid_argument.
  FivePointPermutations(std::array<Color, 5> a, std::array<Color, 5> b);

  Color a(Color i) const { return a_[i - 1]; }
  Color b(Color i) const { return b_[i - 1]; }

  /// The action of F_2 on {0..4} with a acting by A and b by B.
  const schreier::CosetAction& action() const { return action_; }
  /// pi(w)(i) with pi(uv) = pi(u) o pi(v).
  Color pi(const ReducedWord& w, Color i) const {
    return action_.act(w, i - 1) + 1;
  }
  /// Permutation of one letter (a, a^-1, b, b^-1 have codes 0..3).
  Color letter_perm(Letter x, Color i) const { return action_.step(x, i - 1) + 1; }

 private:
  std::array<Color, 5> a_;
  std::array<Color, 5> b_;
  schreier::CosetAction action_;
};

GroupPreset f2();

/// The coloring g * col_seed, where col_seed is drawn by the radial process.
class ColoringState {
 public:
  explicit ColoringState(std::uint64_t seed) : seed_(seed), offset_(f2()) {}
  ColoringState(std::uint64_t seed, ReducedWord offset);

  std::uint64_t seed() const { return seed_; }
  const ReducedWord& offset() const { return offset_; }

  friend bool operator==(const ColoringState&, const ColoringState&) = default;

 private:
  std::uint64_t seed_;
  ReducedWord offset_;
};

/// Color of a vertex and of its four neighbors w*x, indexed by letter code x.
struct Neighborhood {
  Color center = 0;
  std::array<Color, 4> neighbor{};
};

Color color(const ColoringState& state, const ReducedWord& w);
/// Evaluates the closed neighborhood of w and checks it shows all 5 colors.
Neighborhood neighborhood(const ColoringState& state, const ReducedWord& w);

/// color(star_act(g, s), w) = color(s, g^{-1} w).
ColoringState star_act(const ReducedWord& gamma, const ColoringState& state);

/// gamma acting through the twisted action; letters are applied from right to
/// left and each one is realized as s * state for the unique neighbor
/// direction s selected by the root color.
ColoringState twisted_act(const ReducedWord& gamma, const ColoringState& state,
                          const FivePointPermutations& perms = {});

/// The word c with twisted_act(w, s) == star_act(c, s).
ReducedWord twisted_cocycle(const ReducedWord& w, const ColoringState& state,
                            const FivePointPermutations& perms = {});

/// P(color at distance n = i and root color = j) under the rainbow measure.
double exact_star_correlation(int n, Color i, Color j);
/// P(root color = i before and = j after acting by w): (1/5)[pi(w)(i) = j].
double exact_twisted_correlation(const ReducedWord& w, Color i, Color j,
                                 const FivePointPermutations& perms = {});

enum class Action { Star, Twisted };

struct CorrelationRow {
  std::string word;
  int length = 0;
  double exact = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
};

/// Monte Carlo estimate of mu(w A_i intersect A_j) for the cylinder sets
/// A_c = {root color = c}: counts states with root color i whose image under
/// w has root color j. Deterministic in seed.
CorrelationRow mc_correlation(Action action, const ReducedWord& w, Color i,
                              Color j, std::int64_t samples, std::uint64_t seed,
                              const FivePointPermutations& perms = {});

}  // namespace isooe::coloring
