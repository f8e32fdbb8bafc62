#pragma once

// Finite-index subgroups of F_d, given as transitive permutation actions of
// the generators on the cosets (base coset 0 = the subgroup itself).
//
// Convention: left action, act(uv, p) = act(u, act(v, p)), so the letters of
// a word are applied from right to left.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isooe/error.hpp"
#include "isooe/words.hpp"

namespace isooe::schreier {

class InvalidAction : public Error {
 public:
  using Error::Error;
};

class NotTransitive : public Error {
 public:
  using Error::Error;
};

/// Raised when the predicates of the even-subgroup lemma disagree. This can
/// only happen through an implementation bug.
class EquivalenceViolation : public Error {
 public:
  using Error::Error;
};

using Coset = int;
using Permutation = std::vector<int>;

class CosetAction {
 public:
  /// `generators[i]` lists the images of the free generator x_i.
  explicit CosetAction(std::vector<Permutation> generators);

  static CosetAction from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int size() const { return n_; }
  int rank() const { return static_cast<int>(letter_perms_.size() / 2); }
  GroupPreset preset() const { return GroupPreset::free(rank()); }

  /// Permutation of a letter code (inverse letters act by inverse perms).
  const Permutation& letter_perm(Letter x) const { return letter_perms_[x]; }
  Coset step(Letter x, Coset p) const { return letter_perms_[x][p]; }
  const Permutation& generator(int i) const { return letter_perms_[2 * i]; }

  Coset act(const ReducedWord& w, Coset p) const;
  /// Permutation of the whole coset set induced by w.
  Permutation word_perm(const ReducedWord& w) const;

  bool transitive() const { return transitive_; }

 private:
  int n_ = 0;
  std::vector<Permutation> letter_perms_;
  bool transitive_ = false;
};

/// The 5-point action a -> (1 2 3 4 5), b -> (1 3 5 2 4), written 0-indexed.
CosetAction five_point_action();

/// Points reachable from `start` with steps along all letters.
std::vector<char> orbit(const CosetAction& action, Coset start);

bool is_bipartite(const CosetAction& action);
bool even_transitive(const CosetAction& action);
/// Size of the orbit of `base` under the subgroup of even-length words.
int even_orbit_size(const CosetAction& action, Coset base = 0);
bool odd_stabilizer_reachable(const CosetAction& action);
bool is_normal(const CosetAction& action);

namespace detail {
/// Second normality test (transitive centralizer); is_normal uses it for
/// large n where the Schreier-generator table would not fit.
bool is_normal_by_centralizer(const CosetAction& action);
}  // namespace detail

struct SpectralData {
  double lambda2_by_value = 0.0;
  double lambda2_by_modulus = 0.0;
  double spectral_gap() const { return 1.0 - lambda2_by_value; }
};

/// Dense solver up to this many cosets, deflated power iteration above.
inline constexpr int kDenseSpectralLimit = 2000;

/// Non-top spectrum of M = (1/2d) * sum over the 2d letters of their
/// permutation matrices.
SpectralData spectral_gap(const CosetAction& action);
/// Always uses power iteration; exposed for cross-checking the dense route.
SpectralData spectral_gap_power(const CosetAction& action, double tol = 1e-10,
                                int max_iter = 200000);

/// Exact law of act(w, base) for w uniform on the sphere of radius `len`.
std::vector<double> sphere_distribution(const CosetAction& action, int len,
                                        Coset base = 0);
double total_variation_from_uniform(std::span<const double> dist);

struct SchreierReport {
  bool transitive = false;
  int index = 0;
  bool bipartite = false;
  bool even_transitive = false;
  bool odd_stabilizer_word_found = false;
  int even_orbit_size = 0;
  bool normal = false;
  double lambda2_by_value = 0.0;
  double lambda2_by_modulus = 0.0;
  double spectral_gap = 0.0;

  nlohmann::json to_json() const;
};

/// Runs the three independent predicates of the even-subgroup lemma plus the
/// index statement and throws EquivalenceViolation on disagreement.
SchreierReport lemma_even_crosscheck(const CosetAction& action,
                                     bool with_spectrum = true);

/// Rejection sampler: `rank` uniform permutations of n points, kept once the
/// generated group is transitive.
CosetAction random_transitive_action(int n, int rank, std::uint64_t seed);

struct CycleTowerShape {
  int base = 3;
  int step = 3;
  int depth = 3;
  std::vector<int> exponents{1, 1};
  std::int64_t cap = 10'000'000;
};

/// Levels j = 0..depth-1: the kernel of F_d -> Z/(base*step^j) sending x_i to
/// exponents[i], realized as the translation action on Z/(base*step^j).
std::vector<CosetAction> cycle_tower(const CycleTowerShape& shape);

}  // namespace isooe::schreier
