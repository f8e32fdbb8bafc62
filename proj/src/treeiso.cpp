#include "isooe/treeiso.hpp"

#include <map>
#include <mutex>

#include "isooe/random.hpp"

namespace isooe::treeiso {

namespace {

using Index = BallIndex::Index;

void require_radius(std::size_t needed, int radius, const char* what) {
  if (needed > static_cast<std::size_t>(radius)) {
    throw RadiusExceeded(std::string(what) + " needs radius " +
                         std::to_string(needed) + " but the isometry is only " +
                         "known up to radius " + std::to_string(radius));
  }
}

void require_free(const GroupPreset& preset, const GroupPreset& expected) {
  if (preset != expected) {
    throw PresetMismatch("word over " + to_string(preset) +
                         " used with an isometry of " + to_string(expected));
  }
}

// Letter y with word(u) * y = word(v) for adjacent ball vertices u, v.
Letter step_letter(const BallIndex& ball, Index u, Index v) {
  if (v != 0 && ball.parent(v) == u) return ball.last_letter(v);
  return ball.preset().inverse(ball.last_letter(u));
}

// Images of gamma . f on the ball of radius `out_radius`, where `pre_root` is
// the index of gamma^{-1}. Walks the ball in BFS order, tracking the index of
// gamma^{-1} delta and extending the image of the parent by one letter.
// With `expected`, stops at the first vertex whose image differs and returns
// false.
bool translate(const TruncatedIsometry& f, Index pre_root, int out_radius,
               std::vector<Index>& pre, std::vector<Index>& out,
               const std::vector<Index>* expected) {
  const BallIndex& ball = f.ball();
  const Index count = ball.size_upto(out_radius);
  pre.resize(count);
  out.resize(count);
  pre[0] = pre_root;
  out[0] = 0;
  for (Index d = 1; d < count; ++d) {
    const Index parent = ball.parent(d);
    pre[d] = ball.right_multiply(pre[parent], ball.last_letter(d));
    const Letter y =
        step_letter(ball, f.image_of(pre[parent]), f.image_of(pre[d]));
    out[d] = ball.right_multiply(out[parent], y);
    if (expected != nullptr && (*expected)[d] != out[d]) return false;
  }
  return true;
}

}  // namespace

std::shared_ptr<const BallIndex> shared_ball(const GroupPreset& preset,
                                             int radius) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const BallIndex>> cache;
  const std::pair<int, int> key{static_cast<int>(preset.kind()), preset.rank()};
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->radius() >= radius) return it->second;
  }
  auto ball = std::make_shared<const BallIndex>(preset, radius);
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot || slot->radius() < radius) slot = ball;
  return slot;
}

TruncatedIsometry TruncatedIsometry::identity(int rank, int radius) {
  auto ball = treeiso::shared_ball(GroupPreset::free(rank), radius);
  std::vector<Index> image(ball->size_upto(radius));
  for (Index i = 0; i < image.size(); ++i) image[i] = i;
  return {std::move(ball), radius, std::move(image)};
}

TruncatedIsometry TruncatedIsometry::from_images(
    int rank, int radius, const std::vector<ReducedWord>& images) {
  auto ball = treeiso::shared_ball(GroupPreset::free(rank), radius);
  if (images.size() != ball->size_upto(radius)) {
    throw InvalidIsometry("expected " + std::to_string(ball->size_upto(radius)) +
                          " images, got " + std::to_string(images.size()));
  }
  std::vector<Index> image(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Index j = ball->index_of(images[i]);
    if (j == BallIndex::npos || ball->depth(j) > radius) {
      throw InvalidIsometry("image " + to_text(images[i]) +
                            " lies outside the ball");
    }
    image[i] = j;
  }
  return from_indices(std::move(ball), radius, std::move(image));
}

TruncatedIsometry TruncatedIsometry::from_indices(
    std::shared_ptr<const BallIndex> ball, int radius, std::vector<Index> image) {
  TruncatedIsometry f(std::move(ball), radius, std::move(image));
  if (auto err = f.validate()) throw InvalidIsometry(*err);
  return f;
}

std::optional<std::string> TruncatedIsometry::validate() const {
  if (radius_ < 0 || radius_ > ball_->radius()) return "radius out of range";
  const Index count = ball_->size_upto(radius_);
  if (image_.size() != count) return "image table has the wrong size";
  if (image_[0] != 0) return "the identity is not fixed";
  std::vector<char> hit(count, 0);
  for (Index i = 0; i < count; ++i) {
    const Index j = image_[i];
    if (j >= count) return "image of vertex " + std::to_string(i) + " leaves the ball";
    if (ball_->depth(j) != ball_->depth(i)) {
      return "vertex " + to_text(ball_->word_at(i)) + " changes length";
    }
    if (hit[j]) return "two vertices map to " + to_text(ball_->word_at(j));
    hit[j] = 1;
    if (i != 0 && ball_->parent(j) != image_[ball_->parent(i)]) {
      return "edge into " + to_text(ball_->word_at(i)) + " is not preserved";
    }
  }
  return std::nullopt;
}

bool TruncatedIsometry::agrees_with(const TruncatedIsometry& other,
                                    int radius) const {
  if (radius > radius_ || radius > other.radius_ || preset() != other.preset()) {
    return false;
  }
  const Index count = ball_->size_upto(radius);
  return std::equal(image_.begin(), image_.begin() + count,
                    other.image_.begin());
}

TruncatedIsometry haar_sample(int rank, int radius, std::uint64_t seed) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  auto ball = shared_ball(GroupPreset::free(rank), radius);
  const Index count = ball->size_upto(radius);
  std::vector<Index> image(count, BallIndex::npos);
  image[0] = 0;
  const Index interior = radius > 0 ? ball->size_upto(radius - 1) : 0;
  for (Index i = 0; i < interior; ++i) {
    // At the root the forward directions are all letters; elsewhere the
    // children of i are matched to the children of its image.
    KeyedStream rng(seed, i);
    const auto perm = random_permutation(ball->forward_degree(i), rng);
    for (int t = 0; t < static_cast<int>(perm.size()); ++t) {
      image[ball->child_by_rank(i, t)] = ball->child_by_rank(image[i], perm[t]);
    }
  }
  return TruncatedIsometry::from_indices(std::move(ball), radius, std::move(image));
}

ReducedWord apply(const TruncatedIsometry& f, const ReducedWord& w) {
  require_free(w.preset(), f.preset());
  require_radius(w.length(), f.radius(), "apply");
  return f.ball().word_at(f.image_of(f.ball().index_of(w)));
}

TruncatedIsometry invert(const TruncatedIsometry& f) {
  std::vector<Index> inv(f.images().size());
  for (Index i = 0; i < inv.size(); ++i) inv[f.image_of(i)] = i;
  return TruncatedIsometry::from_indices(f.shared_ball(), f.radius(),
                                         std::move(inv));
}

ReducedWord sigma(const ReducedWord& gamma, const TruncatedIsometry& f) {
  require_free(gamma.preset(), f.preset());
  require_radius(gamma.length(), f.radius(), "sigma");
  return invert(apply(f, invert(gamma)));
}

TruncatedIsometry gamma_dot(const ReducedWord& gamma, const TruncatedIsometry& f) {
  require_free(gamma.preset(), f.preset());
  require_radius(gamma.length(), f.radius(), "gamma_dot");
  const int out_radius = f.radius() - static_cast<int>(gamma.length());
  std::vector<Index> pre;
  std::vector<Index> out;
  translate(f, f.ball().index_of(invert(gamma)), out_radius, pre, out, nullptr);
  return TruncatedIsometry::from_indices(f.shared_ball(), out_radius,
                                         std::move(out));
}

bool cocycle_identity_check(const ReducedWord& gamma, const ReducedWord& delta,
                            const TruncatedIsometry& f) {
  require_radius(gamma.length() + delta.length(), f.radius(),
                 "cocycle_identity_check");
  const ReducedWord lhs = sigma(multiply(gamma, delta), f);
  const ReducedWord rhs =
      multiply(sigma(gamma, gamma_dot(delta, f)), sigma(delta, f));
  return lhs == rhs;
}

QuotientPoint quotient_act(const ReducedWord& gamma, const QuotientPoint& p,
                           const schreier::CosetAction& action) {
  return {gamma_dot(gamma, p.iso), action.act(sigma(gamma, p.iso), p.coset)};
}

QuotientPoint diagonal_act(const ReducedWord& gamma, const QuotientPoint& p,
                           const schreier::CosetAction& action) {
  return {gamma_dot(gamma, p.iso), action.act(gamma, p.coset)};
}

QuotientPoint act(OrbitAction kind, const ReducedWord& gamma,
                  const QuotientPoint& p, const schreier::CosetAction& action) {
  return kind == OrbitAction::Quotient ? quotient_act(gamma, p, action)
                                       : diagonal_act(gamma, p, action);
}

QuotientPoint psi(const QuotientPoint& p) { return {invert(p.iso), p.coset}; }

std::optional<int> orbit_distance(const QuotientPoint& p,
                                  const QuotientPoint& target,
                                  const schreier::CosetAction& action,
                                  OrbitAction kind, int max_len,
                                  std::optional<int> margin) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  const int needed = margin.value_or(default_orbit_margin(max_len));
  if (p.iso.radius() < std::max(needed, max_len)) {
    throw RadiusExceeded("orbit_distance up to length " + std::to_string(max_len) +
                         " needs radius >= " + std::to_string(needed) +
                         ", got " + std::to_string(p.iso.radius()));
  }
  const auto& f = p.iso;
  const BallIndex& ball = f.ball();
  std::vector<Index> pre;
  std::vector<Index> out;
  for (const ReducedWord& v : isooe::ball(f.preset(), max_len)) {
    const Index v_inverse = ball.index_of(invert(v));
    // Coset first; it is the cheapest coordinate to reject on.
    schreier::Coset q = 0;
    if (kind == OrbitAction::Quotient) {
      const ReducedWord s = invert(ball.word_at(f.image_of(v_inverse)));
      q = action.act(s, p.coset);
    } else {
      q = action.act(v, p.coset);
    }
    if (q != target.coset) continue;
    const int common =
        std::min(f.radius() - static_cast<int>(v.length()), target.iso.radius());
    if (translate(f, v_inverse, common, pre, out, &target.iso.images())) {
      return static_cast<int>(v.length());
    }
  }
  return std::nullopt;
}

}  // namespace isooe::treeiso
