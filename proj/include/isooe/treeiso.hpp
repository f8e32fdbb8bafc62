#pragma once

// Elements of Iso_1(F_d), isometries of the Cayley tree of F_d that fix the
// identity, known on a ball of finite radius.
//
// Every operation that consumes a group element of length k shrinks the
// valid radius by k and throws RadiusExceeded instead of extrapolating.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isooe/error.hpp"
#include "isooe/schreier.hpp"
#include "isooe/words.hpp"

namespace isooe::treeiso {

class RadiusExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidIsometry : public Error {
 public:
  using Error::Error;
};

/// Shared, immutable ball numbering for a preset, at least `radius` deep.
std::shared_ptr<const BallIndex> shared_ball(const GroupPreset& preset,
                                             int radius);

class TruncatedIsometry {
 public:
  using Index = BallIndex::Index;

  static TruncatedIsometry identity(int rank, int radius);
  /// `images[i]` is the image of the i-th word of ball(free(rank), radius).
  /// Throws InvalidIsometry unless the map is an isometry fixing 1.
  static TruncatedIsometry from_images(int rank, int radius,
                                       const std::vector<ReducedWord>& images);
  /// Builds from raw image indices (same numbering as BallIndex).
  static TruncatedIsometry from_indices(std::shared_ptr<const BallIndex> ball,
                                        int radius, std::vector<Index> image);

  int rank() const { return ball_->preset().rank(); }
  int radius() const { return radius_; }
  const GroupPreset& preset() const { return ball_->preset(); }
  const BallIndex& ball() const { return *ball_; }
  const std::shared_ptr<const BallIndex>& shared_ball() const { return ball_; }

  Index image_of(Index i) const { return image_[i]; }
  const std::vector<Index>& images() const { return image_; }

  /// Error description if an invariant is broken, nullopt otherwise.
  std::optional<std::string> validate() const;

  /// Agreement on the ball of the given radius (<= both radii).
  bool agrees_with(const TruncatedIsometry& other, int radius) const;

  friend bool operator==(const TruncatedIsometry& a, const TruncatedIsometry& b) {
    return a.radius_ == b.radius_ && a.agrees_with(b, a.radius_);
  }

 private:
  TruncatedIsometry(std::shared_ptr<const BallIndex> ball, int radius,
                    std::vector<Index> image)
      : ball_(std::move(ball)), radius_(radius), image_(std::move(image)) {}

  std::shared_ptr<const BallIndex> ball_;
  int radius_;
  std::vector<Index> image_;  // size ball_->size_upto(radius_)
};

/// Haar measure on Iso_1 pushed to the radius-r ball: a uniform bijection of
/// the letters at the root and an independent uniform bijection of forward
/// directions at every other vertex, keyed by (seed, vertex).
TruncatedIsometry haar_sample(int rank, int radius, std::uint64_t seed);

ReducedWord apply(const TruncatedIsometry& f, const ReducedWord& w);
TruncatedIsometry invert(const TruncatedIsometry& f);
/// sigma(gamma, f) = f(gamma^{-1})^{-1}.
ReducedWord sigma(const ReducedWord& gamma, const TruncatedIsometry& f);
/// (gamma . f)(delta) = f(gamma^{-1})^{-1} f(gamma^{-1} delta), valid on the
/// ball of radius f.radius() - |gamma|.
TruncatedIsometry gamma_dot(const ReducedWord& gamma, const TruncatedIsometry& f);
/// sigma(gamma delta, f) == sigma(gamma, delta . f) sigma(delta, f).
bool cocycle_identity_check(const ReducedWord& gamma, const ReducedWord& delta,
                            const TruncatedIsometry& f);

/// A point (f, q) of Iso_1(F_d) x F_d/Lambda.
struct QuotientPoint {
  TruncatedIsometry iso;
  schreier::Coset coset = 0;

  friend bool operator==(const QuotientPoint&, const QuotientPoint&) = default;
};

enum class OrbitAction { Quotient, Diagonal };

/// gamma * (f, q) = (gamma . f, sigma(gamma, f) q).
QuotientPoint quotient_act(const ReducedWord& gamma, const QuotientPoint& p,
                           const schreier::CosetAction& action);
/// gamma (f, q) = (gamma . f, gamma q).
QuotientPoint diagonal_act(const ReducedWord& gamma, const QuotientPoint& p,
                           const schreier::CosetAction& action);
QuotientPoint act(OrbitAction kind, const ReducedWord& gamma,
                  const QuotientPoint& p, const schreier::CosetAction& action);
/// (f, q) -> (f^{-1}, q).
QuotientPoint psi(const QuotientPoint& p);

inline int default_orbit_margin(int max_len) { return 2 * max_len + 2; }

/// Least k <= max_len such that some word of length k moves p to target,
/// comparing isometries on the largest ball both sides cover; nullopt if
/// none. Throws RadiusExceeded if p.iso.radius() < margin.
std::optional<int> orbit_distance(const QuotientPoint& p,
                                  const QuotientPoint& target,
                                  const schreier::CosetAction& action,
                                  OrbitAction kind, int max_len,
                                  std::optional<int> margin = std::nullopt);

}  // namespace isooe::treeiso
