#pragma once

// Reduced words in free groups F_d and universal Coxeter groups W_m.
//
// Letters are encoded as small integer codes. For F_d the code of x_i^{+1} is
// 2i and the code of x_i^{-1} is 2i+1, so inversion flips the low bit. For W_m
// the code of the i-th involution is i and every letter is its own inverse.
// Both Cayley graphs are regular trees of degree 2d resp. m.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isooe/error.hpp"

namespace isooe {

using Letter = std::uint8_t;

enum class GroupKind { Free, UniversalCoxeter };

class GroupPreset {
 public:
  static GroupPreset free(int rank);
  static GroupPreset coxeter(int rank);

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  /// Number of letters, which is also the degree of the Cayley tree.
  int degree() const { return kind_ == GroupKind::Free ? 2 * rank_ : rank_; }

  Letter inverse(Letter x) const {
    return kind_ == GroupKind::Free ? static_cast<Letter>(x ^ 1U) : x;
  }
  int generator_of(Letter x) const {
    return kind_ == GroupKind::Free ? x >> 1 : x;
  }
  int sign_of(Letter x) const {
    return (kind_ == GroupKind::Free && (x & 1U)) ? -1 : 1;
  }
  Letter letter(int generator, int sign) const;

  friend bool operator==(const GroupPreset&, const GroupPreset&) = default;

 private:
  GroupPreset(GroupKind kind, int rank) : kind_(kind), rank_(rank) {}

  GroupKind kind_;
  int rank_;
};

std::string to_string(const GroupPreset& preset);

/// An element of F_d or W_m stored in its unique freely reduced form.
class ReducedWord {
 public:
  explicit ReducedWord(GroupPreset preset) : preset_(preset) {}

  /// Reduces an arbitrary letter sequence.
  static ReducedWord from_letters(GroupPreset preset,
                                  std::span<const Letter> letters);
  /// Reduces a sequence of (generator index, exponent sign) pairs.
  static ReducedWord from_pairs(GroupPreset preset,
                                std::span<const std::pair<int, int>> pairs);
  static ReducedWord generator(GroupPreset preset, int index, int sign = 1);

  const GroupPreset& preset() const { return preset_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  Letter first() const { return letters_.front(); }
  Letter last() const { return letters_.back(); }

  /// Right multiplication by one letter, cancelling if needed.
  void append(Letter x);
  /// Left multiplication by one letter, cancelling if needed.
  void prepend(Letter x);

  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
    return a.preset_ == b.preset_ && a.letters_ == b.letters_;
  }
  /// Shortlex order on the letter codes.
  friend std::strong_ordering operator<=>(const ReducedWord& a,
                                          const ReducedWord& b);

 private:
  GroupPreset preset_;
  std::vector<Letter> letters_;
};

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v);
ReducedWord invert(const ReducedWord& w);
inline std::size_t length(const ReducedWord& w) { return w.length(); }
inline bool is_even(const ReducedWord& w) { return w.length() % 2 == 0; }

inline constexpr std::uint64_t kDefaultBallCap = 10'000'000;

/// |S_k| = deg * (deg-1)^(k-1) for k >= 1, |S_0| = 1.
std::uint64_t sphere_size(const GroupPreset& preset, int k);
/// Saturates at UINT64_MAX.
std::uint64_t ball_size(const GroupPreset& preset, int radius);

/// All reduced words of length <= radius, sorted by length and then by
/// letter codes (the order used by BallIndex).
std::vector<ReducedWord> ball(const GroupPreset& preset, int radius,
                              std::uint64_t cap = kDefaultBallCap);

/// Dense numbering of the radius-r ball of the Cayley tree.
///
/// Vertices are numbered sphere by sphere; inside a sphere by the letter
/// codes read left to right. The number of a word does not depend on the
/// radius, so indices from a smaller ball stay valid in a larger one.
class BallIndex {
 public:
  using Index = std::uint32_t;
  static constexpr Index npos = static_cast<Index>(-1);

  BallIndex(GroupPreset preset, int radius, std::uint64_t cap = kDefaultBallCap);

  const GroupPreset& preset() const { return preset_; }
  int radius() const { return radius_; }
  Index size() const { return static_cast<Index>(parent_.size()); }
  /// Number of vertices at distance <= r from the root; r <= radius().
  Index size_upto(int r) const { return sphere_offset_[r + 1]; }
  Index sphere_offset(int k) const { return sphere_offset_[k]; }

  int depth(Index i) const { return depth_[i]; }
  Index parent(Index i) const { return parent_[i]; }
  Letter last_letter(Index i) const { return last_[i]; }

  /// Child of i along letter x (x must not backtrack); npos beyond radius.
  Index child(Index i, Letter x) const;
  /// Child of i with the given rank among its forward letters.
  Index child_by_rank(Index i, int rank) const;
  /// Number of forward letters at i.
  int forward_degree(Index i) const {
    return i == 0 ? preset_.degree() : preset_.degree() - 1;
  }
  /// Index of word(i)*x, or npos if it falls outside the ball.
  Index right_multiply(Index i, Letter x) const;

  Index index_of(const ReducedWord& w) const;
  ReducedWord word_at(Index i) const;

 private:
  GroupPreset preset_;
  int radius_;
  std::vector<Index> sphere_offset_;
  std::vector<Index> parent_;
  std::vector<Letter> last_;
  std::vector<std::uint32_t> depth_;
};

/// Text syntax: letters a, b, c, ... for generators, upper case for inverses
/// in free groups, "1" for the identity.
ReducedWord parse_word(const GroupPreset& preset, std::string_view text);
std::string to_text(const ReducedWord& w);

}  // namespace isooe
