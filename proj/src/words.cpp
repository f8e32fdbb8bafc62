#include "isooe/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace isooe {

namespace {

constexpr int kMaxRank = 26;

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw std::invalid_argument("group rank must be in [1, 26], got " +
                                std::to_string(rank));
  }
}

// Rank of letter x among the forward letters after `prev` (letters other
// than inverse(prev)), in increasing code order.
int forward_rank(const GroupPreset& preset, Letter prev, Letter x) {
  const Letter back = preset.inverse(prev);
  return x > back ? x - 1 : x;
}

Letter forward_letter(const GroupPreset& preset, Letter prev, int rank) {
  const Letter back = preset.inverse(prev);
  return static_cast<Letter>(rank >= back ? rank + 1 : rank);
}

}  // namespace

GroupPreset GroupPreset::free(int rank) {
  check_rank(rank);
  return {GroupKind::Free, rank};
}

GroupPreset GroupPreset::coxeter(int rank) {
  check_rank(rank);
  return {GroupKind::UniversalCoxeter, rank};
}

Letter GroupPreset::letter(int generator, int sign) const {
  if (generator < 0 || generator >= rank_) {
    throw std::out_of_range("generator index " + std::to_string(generator) +
                            " out of range for " + to_string(*this));
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("exponent sign must be +1 or -1");
  }
  if (kind_ == GroupKind::UniversalCoxeter) {
    return static_cast<Letter>(generator);
  }
  return static_cast<Letter>(2 * generator + (sign < 0 ? 1 : 0));
}

std::string to_string(const GroupPreset& preset) {
  return (preset.kind() == GroupKind::Free ? "F" : "W") +
         std::to_string(preset.rank());
}

ReducedWord ReducedWord::from_letters(GroupPreset preset,
                                      std::span<const Letter> letters) {
  ReducedWord w(preset);
  for (Letter x : letters) {
    if (x >= preset.degree()) {
      throw std::out_of_range("letter code out of range for " +
                              to_string(preset));
    }
    w.append(x);
  }
  return w;
}

ReducedWord ReducedWord::from_pairs(GroupPreset preset,
                                    std::span<const std::pair<int, int>> pairs) {
  ReducedWord w(preset);
  for (const auto& [gen, sign] : pairs) w.append(preset.letter(gen, sign));
  return w;
}

ReducedWord ReducedWord::generator(GroupPreset preset, int index, int sign) {
  ReducedWord w(preset);
  w.letters_.push_back(preset.letter(index, sign));
  return w;
}

void ReducedWord::append(Letter x) {
  if (!letters_.empty() && letters_.back() == preset_.inverse(x)) {
    letters_.pop_back();
  } else {
    letters_.push_back(x);
  }
}

void ReducedWord::prepend(Letter x) {
  if (!letters_.empty() && letters_.front() == preset_.inverse(x)) {
    letters_.erase(letters_.begin());
  } else {
    letters_.insert(letters_.begin(), x);
  }
}

std::vector<std::pair<int, int>> ReducedWord::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(letters_.size());
  for (Letter x : letters_) {
    out.emplace_back(preset_.generator_of(x), preset_.sign_of(x));
  }
  return out;
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
      b.letters_.end());
}

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  if (!(u.preset() == v.preset())) {
    throw PresetMismatch("cannot multiply words over " + to_string(u.preset()) +
                         " and " + to_string(v.preset()));
  }
  ReducedWord out = u;
  for (Letter x : v.letters()) out.append(x);
  return out;
}

ReducedWord invert(const ReducedWord& w) {
  ReducedWord out(w.preset());
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    out.append(w.preset().inverse(*it));
  }
  return out;
}

std::uint64_t sphere_size(const GroupPreset& preset, int k) {
  if (k < 0) return 0;
  if (k == 0) return 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t deg = preset.degree();
  std::uint64_t size = deg;
  for (int i = 1; i < k; ++i) {
    if (deg - 1 != 0 && size > kMax / (deg - 1)) return kMax;
    size *= deg - 1;
  }
  return size;
}

std::uint64_t ball_size(const GroupPreset& preset, int radius) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (int k = 0; k <= radius; ++k) {
    const std::uint64_t s = sphere_size(preset, k);
    if (s == 0) break;
    if (total > kMax - s) return kMax;
    total += s;
  }
  return total;
}

std::vector<ReducedWord> ball(const GroupPreset& preset, int radius,
                              std::uint64_t cap) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  const std::uint64_t size = ball_size(preset, radius);
  if (size > cap) {
    throw CapExceeded("ball of radius " + std::to_string(radius) + " in " +
                      to_string(preset) + " exceeds the cap of " +
                      std::to_string(cap) + " elements");
  }
  std::vector<ReducedWord> out;
  out.reserve(size);
  out.emplace_back(preset);
  // Extend sphere k to sphere k+1 in place; no backtracking means every
  // produced word is reduced and distinct.
  std::size_t begin = 0;
  for (int k = 0; k < radius; ++k) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int x = 0; x < preset.degree(); ++x) {
        const auto letter = static_cast<Letter>(x);
        if (!out[i].is_identity() &&
            out[i].last() == preset.inverse(letter)) {
          continue;
        }
        ReducedWord next = out[i];
        next.append(letter);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

BallIndex::BallIndex(GroupPreset preset, int radius, std::uint64_t cap)
    : preset_(preset), radius_(radius) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  const std::uint64_t total = ball_size(preset, radius);
  if (total > cap || total >= npos) {
    throw CapExceeded("ball of radius " + std::to_string(radius) + " in " +
                      to_string(preset) + " exceeds the cap of " +
                      std::to_string(cap) + " elements");
  }
  sphere_offset_.assign(radius + 2, 0);
  for (int k = 0; k <= radius; ++k) {
    sphere_offset_[k + 1] =
        sphere_offset_[k] + static_cast<Index>(sphere_size(preset, k));
  }
  parent_.resize(total);
  last_.resize(total);
  depth_.resize(total);
  parent_[0] = npos;
  last_[0] = 0;
  depth_[0] = 0;
  for (Index i = 0; i < total; ++i) {
    if (depth_[i] == static_cast<std::uint32_t>(radius)) break;
    for (int r = 0; r < forward_degree(i); ++r) {
      const Index c = child_by_rank(i, r);
      parent_[c] = i;
      depth_[c] = depth_[i] + 1;
      last_[c] = i == 0 ? static_cast<Letter>(r)
                        : forward_letter(preset_, last_[i], r);
    }
  }
}

BallIndex::Index BallIndex::child_by_rank(Index i, int rank) const {
  const int k = depth_[i];
  if (k >= radius_) return npos;
  const Index within = i - sphere_offset_[k];
  return sphere_offset_[k + 1] +
         within * static_cast<Index>(forward_degree(i)) +
         static_cast<Index>(rank);
}

BallIndex::Index BallIndex::child(Index i, Letter x) const {
  if (i == 0) return child_by_rank(0, x);
  return child_by_rank(i, forward_rank(preset_, last_[i], x));
}

BallIndex::Index BallIndex::right_multiply(Index i, Letter x) const {
  if (i != 0 && last_[i] == preset_.inverse(x)) return parent_[i];
  return child(i, x);
}

BallIndex::Index BallIndex::index_of(const ReducedWord& w) const {
  if (!(w.preset() == preset_)) {
    throw PresetMismatch("word over " + to_string(w.preset()) +
                         " used with a ball over " + to_string(preset_));
  }
  if (static_cast<int>(w.length()) > radius_) return npos;
  Index i = 0;
  for (Letter x : w.letters()) i = child(i, x);
  return i;
}

ReducedWord BallIndex::word_at(Index i) const {
  std::vector<Letter> letters(depth_[i]);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    *it = last_[i];
    i = parent_[i];
  }
  return ReducedWord::from_letters(preset_, letters);
}

ReducedWord parse_word(const GroupPreset& preset, std::string_view text) {
  ReducedWord w(preset);
  if (text == "1") return w;
  if (text.empty()) throw ParseError("empty word; use \"1\" for the identity");
  for (char ch : text) {
    const bool upper = std::isupper(static_cast<unsigned char>(ch)) != 0;
    const int gen =
        std::tolower(static_cast<unsigned char>(ch)) - static_cast<int>('a');
    if (!std::isalpha(static_cast<unsigned char>(ch)) || gen >= preset.rank()) {
      throw ParseError("invalid letter '" + std::string(1, ch) + "' for " +
                       to_string(preset));
    }
    // In W_m every generator is an involution, so case is irrelevant.
    const int sign = upper && preset.kind() == GroupKind::Free ? -1 : 1;
    w.append(preset.letter(gen, sign));
  }
  return w;
}

std::string to_text(const ReducedWord& w) {
  if (w.is_identity()) return "1";
  std::string out;
  out.reserve(w.length());
  for (Letter x : w.letters()) {
    const char base = w.preset().sign_of(x) < 0 ? 'A' : 'a';
    out.push_back(static_cast<char>(base + w.preset().generator_of(x)));
  }
  return out;
}

}  // namespace isooe
