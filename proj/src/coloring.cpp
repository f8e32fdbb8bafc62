#include "isooe/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isooe/random.hpp"

namespace isooe::coloring {

namespace {

constexpr std::uint64_t kRootKey = 0x726f6f74ULL;

std::uint64_t child_key(std::uint64_t parent, Letter x) {
  return combine_keys(parent, static_cast<std::uint64_t>(x) + 1);
}

bool is_five_cycle(const std::array<Color, 5>& p) {
  std::array<char, 5> seen{};
  for (Color c : p) {
    if (c < 1 || c > 5 || seen[c - 1]) return false;
    seen[c - 1] = 1;
  }
  int i = 1;
  for (int k = 0; k < 4; ++k) {
    i = p[i - 1];
    if (i == 1) return false;
  }
  return true;
}

schreier::CosetAction make_action(const std::array<Color, 5>& a,
                                  const std::array<Color, 5>& b) {
  if (!is_five_cycle(a) || !is_five_cycle(b)) {
    throw std::invalid_argument("A and B must be 5-cycles");
  }
  for (int i = 0; i < 5; ++i) {
    if (a[i] == b[i]) {
      throw std::invalid_argument("A and B must differ at every point");
    }
  }
  std::vector<schreier::Permutation> gens(2, schreier::Permutation(5));
  for (int i = 0; i < 5; ++i) {
    gens[0][i] = a[i] - 1;
    gens[1][i] = b[i] - 1;
  }
  return schreier::CosetAction(std::move(gens));
}

void check_color(Color c) {
  if (c < 1 || c > kColors) {
    throw std::invalid_argument("colors are 1..5, got " + std::to_string(c));
  }
}

void check_f2(const ReducedWord& w) {
  if (w.preset() != f2()) {
    throw PresetMismatch("colorings live on F2, got a word over " +
                         to_string(w.preset()));
  }
}

// The radial process walked along the geodesic from the root to v. Returns
// the (parent color, own color) pair at v together with v's randomness key.
struct Walk {
  Color parent = 0;  // 0 at the root
  Color own = 0;
  std::uint64_t key = 0;
};

// Colors not in {x, y}, ascending.
int remaining_colors(Color x, Color y, std::array<Color, 5>& out) {
  int n = 0;
  for (Color c = 1; c <= kColors; ++c) {
    if (c != x && c != y) out[n++] = c;
  }
  return n;
}

// Colors assigned to the forward children of a vertex, indexed by the rank of
// the child's letter among the forward letters.
std::array<Color, 4> child_colors(std::uint64_t seed, const Walk& at) {
  std::array<Color, 5> pool{};
  const int n = remaining_colors(at.own, at.parent, pool);
  KeyedStream rng(seed, at.key);
  if (at.parent == 0) rng();  // the root's first draw picked its own color
  const auto perm = random_permutation(n, rng);
  std::array<Color, 4> out{};
  for (int t = 0; t < n; ++t) out[t] = pool[perm[t]];
  return out;
}

int forward_rank(Letter prev, Letter x) {
  const Letter back = prev ^ 1U;
  return x > back ? x - 1 : x;
}

Walk walk_to(std::uint64_t seed, const ReducedWord& v) {
  Walk at;
  at.key = kRootKey;
  {
    KeyedStream rng(seed, kRootKey);
    at.own = 1 + static_cast<Color>(rng() % kColors);
  }
  const auto& letters = v.letters();
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const Letter x = letters[k];
    const int rank = k == 0 ? x : forward_rank(letters[k - 1], x);
    const Color next = child_colors(seed, at)[rank];
    at.parent = at.own;
    at.own = next;
    at.key = child_key(at.key, x);
  }
  return at;
}

// Neighborhood of vertex v of col_seed.
Neighborhood seed_neighborhood(std::uint64_t seed, const ReducedWord& v) {
  const Walk at = walk_to(seed, v);
  const auto children = child_colors(seed, at);
  Neighborhood out;
  out.center = at.own;
  const bool root = v.is_identity();
  for (Letter x = 0; x < 4; ++x) {
    if (!root && x == (v.last() ^ 1U)) {
      out.neighbor[x] = at.parent;
    } else {
      out.neighbor[x] = children[root ? x : forward_rank(v.last(), x)];
    }
  }
  std::array<char, 6> seen{};
  seen[out.center] = 1;
  for (Color c : out.neighbor) {
    if (seen[c]) {
      throw NotRainbow("closed neighborhood of " + to_text(v) +
                       " repeats color " + std::to_string(c));
    }
    seen[c] = 1;
  }
  return out;
}

// One letter of the twisted action: the neighbor direction y whose color is
// P(root color); the new state is y^{-1} * state.
Letter twisted_selector(Letter x, const ColoringState& state,
                        const FivePointPermutations& perms) {
  const Neighborhood nb = neighborhood(state, ReducedWord(f2()));
  const Color target = perms.letter_perm(x, nb.center);
  int found = -1;
  for (Letter y = 0; y < 4; ++y) {
    if (nb.neighbor[y] != target) continue;
    if (found >= 0) {
      throw NonUniqueSelector("two neighbors of the root carry color " +
                              std::to_string(target));
    }
    found = y;
  }
  if (found < 0) {
    throw NoSelector("no neighbor of the root carries color " +
                     std::to_string(target));
  }
  return static_cast<Letter>(found ^ 1);
}

}  // namespace

FivePointPermutations::FivePointPermutations()
    : FivePointPermutations({2, 3, 4, 5, 1}, {3, 4, 5, 1, 2}) {}

FivePointPermutations::FivePointPermutations(std::array<Color, 5> a,
                                             std::array<Color, 5> b)
    : a_(a), b_(b), action_(make_action(a, b)) {}

GroupPreset f2() { return GroupPreset::free(2); }

ColoringState::ColoringState(std::uint64_t seed, ReducedWord offset)
    : seed_(seed), offset_(std::move(offset)) {
  check_f2(offset_);
}

Color color(const ColoringState& state, const ReducedWord& w) {
  check_f2(w);
  return walk_to(state.seed(), multiply(invert(state.offset()), w)).own;
}

Neighborhood neighborhood(const ColoringState& state, const ReducedWord& w) {
  check_f2(w);
  // Neighbors of w in the state are offset^{-1} w x in col_seed, which are
  // the neighbors of offset^{-1} w along the same letters.
  return seed_neighborhood(state.seed(), multiply(invert(state.offset()), w));
}

ColoringState star_act(const ReducedWord& gamma, const ColoringState& state) {
  check_f2(gamma);
  return {state.seed(), multiply(gamma, state.offset())};
}

ColoringState twisted_act(const ReducedWord& gamma, const ColoringState& state,
                          const FivePointPermutations& perms) {
  return star_act(twisted_cocycle(gamma, state, perms), state);
}

ReducedWord twisted_cocycle(const ReducedWord& w, const ColoringState& state,
                            const FivePointPermutations& perms) {
  check_f2(w);
  ReducedWord c(f2());
  ColoringState current = state;
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const Letter s = twisted_selector(*it, current, perms);
    c.prepend(s);
    current = ColoringState(state.seed(), multiply(c, state.offset()));
  }
  return c;
}

double exact_star_correlation(int n, Color i, Color j) {
  check_color(i);
  check_color(j);
  if (n < 0) throw std::invalid_argument("distance must be >= 0");
  if (n == 0) return i == j ? 1.0 / kColors : 0.0;
  // Second-order chain along a geodesic started at root color j:
  // prob[prev][cur] after each step.
  double prob[kColors + 1][kColors + 1] = {};
  for (Color c = 1; c <= kColors; ++c) {
    if (c != j) prob[j][c] = 1.0 / kColors / (kColors - 1);
  }
  for (int step = 1; step < n; ++step) {
    double next[kColors + 1][kColors + 1] = {};
    for (Color p = 1; p <= kColors; ++p) {
      for (Color c = 1; c <= kColors; ++c) {
        if (prob[p][c] == 0.0) continue;
        for (Color x = 1; x <= kColors; ++x) {
          if (x != p && x != c) next[c][x] += prob[p][c] / 3.0;
        }
      }
    }
    std::copy(&next[0][0], &next[0][0] + (kColors + 1) * (kColors + 1),
              &prob[0][0]);
  }
  double total = 0.0;
  for (Color p = 1; p <= kColors; ++p) total += prob[p][i];
  return total;
}

double exact_twisted_correlation(const ReducedWord& w, Color i, Color j,
                                 const FivePointPermutations& perms) {
  check_color(i);
  check_color(j);
  check_f2(w);
  return perms.pi(w, i) == j ? 1.0 / kColors : 0.0;
}

CorrelationRow mc_correlation(Action action, const ReducedWord& w, Color i,
                              Color j, std::int64_t samples, std::uint64_t seed,
                              const FivePointPermutations& perms) {
  check_color(i);
  check_color(j);
  check_f2(w);
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const ReducedWord w_inverse = invert(w);
  const ReducedWord identity(f2());
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const ColoringState state(combine_keys(seed, static_cast<std::uint64_t>(k)));
    if (color(state, identity) != i) continue;
    const Color after = action == Action::Star
                            ? color(state, w_inverse)
                            : color(twisted_act(w, state, perms), identity);
    if (after == j) ++hits;
  }
  CorrelationRow row;
  row.word = to_text(w);
  row.length = static_cast<int>(w.length());
  row.exact = action == Action::Star
                  ? exact_star_correlation(row.length, j, i)
                  : exact_twisted_correlation(w, i, j, perms);
  row.samples = samples;
  row.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  row.stderr_ = std::sqrt(row.estimate * (1.0 - row.estimate) /
                          static_cast<double>(samples));
  return row;
}

}  // namespace isooe::coloring
