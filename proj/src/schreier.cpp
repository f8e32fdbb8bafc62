#include "isooe/schreier.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "isooe/random.hpp"

namespace isooe::schreier {

namespace {

void require_transitive(const CosetAction& action, const char* what) {
  if (!action.transitive()) {
    throw NotTransitive(std::string(what) +
                        " requires a transitive action (the generated group "
                        "does not act transitively on " +
                        std::to_string(action.size()) + " points)");
  }
}

int letter_count(const CosetAction& action) { return 2 * action.rank(); }

Permutation inverse_perm(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

// Stabilizer-equality test through the Schreier generators of Stab(0): one
// per non-tree edge of a BFS spanning tree. Needs an n x n table.
bool normal_by_schreier_generators(const CosetAction& action) {
  const int n = action.size();
  const int letters = letter_count(action);
  // tree[p * n + q] = act(t_p, q) for the tree word t_p with act(t_p, 0) = p.
  std::vector<std::int32_t> tree(static_cast<std::size_t>(n) * n, -1);
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (int q = 0; q < n; ++q) tree[q] = q;
  seen[0] = 1;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int p = order[head];
    for (int x = 0; x < letters; ++x) {
      const int sp = action.step(static_cast<Letter>(x), p);
      if (seen[sp]) continue;
      seen[sp] = 1;
      order.push_back(sp);
      for (int q = 0; q < n; ++q) {
        tree[static_cast<std::size_t>(sp) * n + q] =
            action.step(static_cast<Letter>(x), tree[static_cast<std::size_t>(p) * n + q]);
      }
    }
  }
  // The generator t_{sp}^{-1} s t_p fixes q iff s(t_p(q)) = t_{sp}(q).
  for (int p = 0; p < n; ++p) {
    for (int x = 0; x < letters; ++x) {
      const int sp = action.step(static_cast<Letter>(x), p);
      const auto* tp = &tree[static_cast<std::size_t>(p) * n];
      const auto* tsp = &tree[static_cast<std::size_t>(sp) * n];
      for (int q = 0; q < n; ++q) {
        if (action.step(static_cast<Letter>(x), tp[q]) != tsp[q]) return false;
      }
    }
  }
  return true;
}

// Normal iff the centralizer of the action is transitive: for every p there
// is a commuting bijection sending 0 to p.
bool normal_by_centralizer(const CosetAction& action) {
  const int n = action.size();
  const int letters = letter_count(action);
  std::vector<int> phi(n);
  std::vector<int> queue(n);
  for (int target = 0; target < n; ++target) {
    std::fill(phi.begin(), phi.end(), -1);
    phi[0] = target;
    int head = 0;
    int tail = 0;
    queue[tail++] = 0;
    bool ok = true;
    while (ok && head < tail) {
      const int p = queue[head++];
      for (int x = 0; x < letters && ok; ++x) {
        const int sp = action.step(static_cast<Letter>(x), p);
        const int image = action.step(static_cast<Letter>(x), phi[p]);
        if (phi[sp] < 0) {
          phi[sp] = image;
          queue[tail++] = sp;
        } else if (phi[sp] != image) {
          ok = false;
        }
      }
    }
    if (!ok) return false;
  }
  return true;
}

constexpr int kSchreierTableLimit = 4096;

}  // namespace

CosetAction::CosetAction(std::vector<Permutation> generators) {
  if (generators.empty()) {
    throw InvalidAction("a coset action needs at least one generator");
  }
  n_ = static_cast<int>(generators.front().size());
  if (n_ == 0) throw InvalidAction("a coset action needs at least one point");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (static_cast<int>(g.size()) != n_) {
      throw InvalidAction("generator " + std::to_string(i) + " has " +
                          std::to_string(g.size()) + " images, expected " +
                          std::to_string(n_));
    }
    std::vector<char> hit(n_, 0);
    for (int v : g) {
      if (v < 0 || v >= n_ || hit[v]) {
        throw InvalidAction("generator " + std::to_string(i) +
                            " is not a permutation of {0.." +
                            std::to_string(n_ - 1) + "}");
      }
      hit[v] = 1;
    }
  }
  // Letter codes follow GroupPreset::free: 2i -> x_i, 2i+1 -> x_i^{-1}.
  for (auto& g : generators) {
    Permutation inv = inverse_perm(g);
    letter_perms_.push_back(std::move(g));
    letter_perms_.push_back(std::move(inv));
  }
  const auto reach = orbit(*this, 0);
  transitive_ = std::all_of(reach.begin(), reach.end(),
                            [](char c) { return c != 0; });
}

CosetAction CosetAction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("gens")) {
    throw InvalidAction("coset action JSON must be an object with \"gens\"");
  }
  std::vector<Permutation> gens;
  try {
    gens = j.at("gens").get<std::vector<Permutation>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidAction(std::string("malformed \"gens\": ") + e.what());
  }
  CosetAction action(std::move(gens));
  if (j.contains("n")) {
    if (!j.at("n").is_number_integer() || j.at("n").get<int>() != action.size()) {
      throw InvalidAction("\"n\" does not match the length of the generators");
    }
  }
  return action;
}

nlohmann::json CosetAction::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (int i = 0; i < rank(); ++i) gens.push_back(generator(i));
  return {{"n", n_}, {"gens", gens}};
}

Coset CosetAction::act(const ReducedWord& w, Coset p) const {
  if (w.preset() != preset()) {
    throw PresetMismatch("word over " + to_string(w.preset()) +
                         " acting on an action of " + to_string(preset()));
  }
  if (p < 0 || p >= n_) {
    throw std::out_of_range("coset " + std::to_string(p) + " out of range");
  }
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    p = letter_perms_[*it][p];
  }
  return p;
}

Permutation CosetAction::word_perm(const ReducedWord& w) const {
  Permutation out(n_);
  for (int p = 0; p < n_; ++p) out[p] = act(w, p);
  return out;
}

CosetAction five_point_action() {
  // a = (1 2 3 4 5) and b = (1 3 5 2 4) on {1..5}, shifted to {0..4}.
  return CosetAction({{1, 2, 3, 4, 0}, {2, 3, 4, 0, 1}});
}

std::vector<char> orbit(const CosetAction& action, Coset start) {
  std::vector<char> seen(action.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int x = 0; x < letter_count(action); ++x) {
      const int q = action.step(static_cast<Letter>(x), p);
      if (!seen[q]) {
        seen[q] = 1;
        stack.push_back(q);
      }
    }
  }
  return seen;
}

bool is_bipartite(const CosetAction& action) {
  require_transitive(action, "is_bipartite");
  std::vector<int> side(action.size(), -1);
  std::deque<int> queue{0};
  side[0] = 0;
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    for (int x = 0; x < letter_count(action); ++x) {
      const int q = action.step(static_cast<Letter>(x), p);
      if (side[q] < 0) {
        side[q] = 1 - side[p];
        queue.push_back(q);
      } else if (side[q] == side[p]) {
        return false;  // odd cycle, including loops p = s.p
      }
    }
  }
  return true;
}

int even_orbit_size(const CosetAction& action, Coset base) {
  const int letters = letter_count(action);
  std::vector<char> seen(action.size(), 0);
  std::deque<int> queue{base};
  seen[base] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    for (int y = 0; y < letters; ++y) {
      const int mid = action.step(static_cast<Letter>(y), p);
      for (int x = 0; x < letters; ++x) {
        const int q = action.step(static_cast<Letter>(x), mid);
        if (!seen[q]) {
          seen[q] = 1;
          ++count;
          queue.push_back(q);
        }
      }
    }
  }
  return count;
}

bool even_transitive(const CosetAction& action) {
  require_transitive(action, "even_transitive");
  return even_orbit_size(action, 0) == action.size();
}

bool odd_stabilizer_reachable(const CosetAction& action) {
  require_transitive(action, "odd_stabilizer_reachable");
  const int n = action.size();
  // State 2p + parity.
  std::vector<char> seen(2 * static_cast<std::size_t>(n), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int state = queue.front();
    queue.pop_front();
    const int p = state / 2;
    const int parity = state % 2;
    for (int x = 0; x < letter_count(action); ++x) {
      const int next = 2 * action.step(static_cast<Letter>(x), p) + (1 - parity);
      if (next == 1) return true;  // back at coset 0 with odd parity
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return false;
}

bool is_normal(const CosetAction& action) {
  require_transitive(action, "is_normal");
  if (action.size() <= kSchreierTableLimit) {
    return normal_by_schreier_generators(action);
  }
  return normal_by_centralizer(action);
}

namespace detail {
bool is_normal_by_centralizer(const CosetAction& action) {
  require_transitive(action, "is_normal");
  return normal_by_centralizer(action);
}
}  // namespace detail

SpectralData spectral_gap(const CosetAction& action) {
  require_transitive(action, "spectral_gap");
  const int n = action.size();
  if (n < 2) throw std::invalid_argument("spectral_gap requires n >= 2");
  if (n > kDenseSpectralLimit) return spectral_gap_power(action);

  const int letters = letter_count(action);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double weight = 1.0 / letters;
  for (int x = 0; x < letters; ++x) {
    for (int p = 0; p < n; ++p) {
      m(action.step(static_cast<Letter>(x), p), p) += weight;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending; ev[n-1] = 1
  SpectralData out;
  out.lambda2_by_value = ev[n - 2];
  out.lambda2_by_modulus = std::max(std::abs(ev[0]), std::abs(ev[n - 2]));
  return out;
}

SpectralData spectral_gap_power(const CosetAction& action, double tol,
                                int max_iter) {
  require_transitive(action, "spectral_gap");
  const int n = action.size();
  if (n < 2) throw std::invalid_argument("spectral_gap requires n >= 2");
  const int letters = letter_count(action);

  auto apply_m = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int x = 0; x < letters; ++x) {
      for (int p = 0; p < n; ++p) {
        out[action.step(static_cast<Letter>(x), p)] += v[p];
      }
    }
    return Eigen::VectorXd(out / letters);
  };
  // The top eigenvector of M is constant; deflate by removing the mean.
  auto deflate = [](Eigen::VectorXd& v) { v.array() -= v.mean(); };

  auto dominant = [&](auto&& op) {
    KeyedStream rng(0x5eedULL, static_cast<std::uint64_t>(n));
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }
    deflate(v);
    v.normalize();
    double rho = 0.0;
    for (int it = 0; it < max_iter; ++it) {
      Eigen::VectorXd w = op(v);
      deflate(w);
      const double next = v.dot(w);
      const double norm = w.norm();
      if (norm == 0.0) return 0.0;
      v = w / norm;
      if (it > 0 && std::abs(next - rho) < tol) return next;
      rho = next;
    }
    return rho;
  };

  SpectralData out;
  // (M + I)/2 has spectrum in [0, 1], so its top non-constant eigenvalue
  // corresponds to the largest eigenvalue of M by value.
  const double shifted = dominant(
      [&](const Eigen::VectorXd& v) { return Eigen::VectorXd((apply_m(v) + v) / 2); });
  out.lambda2_by_value = 2.0 * shifted - 1.0;
  const double squared =
      dominant([&](const Eigen::VectorXd& v) { return apply_m(apply_m(v)); });
  out.lambda2_by_modulus = std::sqrt(std::max(squared, 0.0));
  return out;
}

std::vector<double> sphere_distribution(const CosetAction& action, int len,
                                        Coset base) {
  if (len < 0) throw std::invalid_argument("sphere radius must be >= 0");
  const int n = action.size();
  if (base < 0 || base >= n) throw std::out_of_range("base coset out of range");
  std::vector<double> dist(n, 0.0);
  if (len == 0) {
    dist[base] = 1.0;
    return dist;
  }
  const int letters = letter_count(action);
  const GroupPreset preset = action.preset();
  // mass[p * letters + x]: probability that the suffix read so far moves the
  // base point to p and its leftmost letter is x. The next letter (to the
  // left) must not be the inverse of x.
  std::vector<double> mass(static_cast<std::size_t>(n) * letters, 0.0);
  std::vector<double> next(mass.size());
  for (int x = 0; x < letters; ++x) {
    mass[static_cast<std::size_t>(action.step(static_cast<Letter>(x), base)) * letters + x] +=
        1.0 / letters;
  }
  const double branch = 1.0 / (letters - 1);
  for (int step = 1; step < len; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int p = 0; p < n; ++p) {
      for (int x = 0; x < letters; ++x) {
        const double m = mass[static_cast<std::size_t>(p) * letters + x];
        if (m == 0.0) continue;
        const Letter back = preset.inverse(static_cast<Letter>(x));
        for (int y = 0; y < letters; ++y) {
          if (y == back) continue;
          next[static_cast<std::size_t>(action.step(static_cast<Letter>(y), p)) * letters + y] +=
              m * branch;
        }
      }
    }
    mass.swap(next);
  }
  for (int p = 0; p < n; ++p) {
    for (int x = 0; x < letters; ++x) {
      dist[p] += mass[static_cast<std::size_t>(p) * letters + x];
    }
  }
  return dist;
}

double total_variation_from_uniform(std::span<const double> dist) {
  const double u = 1.0 / static_cast<double>(dist.size());
  double total = 0.0;
  for (double v : dist) total += std::abs(v - u);
  return total / 2.0;
}

nlohmann::json SchreierReport::to_json() const {
  return {{"transitive", transitive},
          {"index", index},
          {"bipartite", bipartite},
          {"evenTransitive", even_transitive},
          {"oddStabilizerWordFound", odd_stabilizer_word_found},
          {"evenOrbitSize", even_orbit_size},
          {"normal", normal},
          {"lambda2ByValue", lambda2_by_value},
          {"lambda2ByModulus", lambda2_by_modulus},
          {"spectralGap", spectral_gap}};
}

SchreierReport lemma_even_crosscheck(const CosetAction& action,
                                     bool with_spectrum) {
  require_transitive(action, "lemma_even_crosscheck");
  SchreierReport r;
  r.transitive = true;
  r.index = action.size();
  r.bipartite = is_bipartite(action);
  r.even_transitive = even_transitive(action);
  r.odd_stabilizer_word_found = odd_stabilizer_reachable(action);
  r.even_orbit_size = even_orbit_size(action, 0);
  r.normal = is_normal(action);

  auto violation = [&](const std::string& what) {
    return EquivalenceViolation(what + " for action " + action.to_json().dump());
  };
  if (r.bipartite == r.even_transitive ||
      r.bipartite == r.odd_stabilizer_word_found) {
    throw violation("bipartite/evenTransitive/oddStabilizer disagree");
  }
  const int expected = r.bipartite ? r.index / 2 : r.index;
  if (r.even_orbit_size != expected ||
      (r.bipartite && r.index % 2 != 0)) {
    throw violation("even orbit size " + std::to_string(r.even_orbit_size) +
                    " does not match the index statement");
  }
  if (!r.normal) {
    // For a normal subgroup every base point gives the same orbit size; for
    // other subgroups sample conjugates.
    KeyedStream rng(0xe7e7ULL, static_cast<std::uint64_t>(r.index));
    for (int k = 0; k < 10; ++k) {
      const int p = static_cast<int>(rng() % static_cast<std::uint64_t>(r.index));
      if (even_orbit_size(action, p) != expected) {
        throw violation("even orbit size at coset " + std::to_string(p) +
                        " does not match the index statement");
      }
    }
  }

  if (with_spectrum && r.index >= 2) {
    const auto s = spectral_gap(action);
    r.lambda2_by_value = s.lambda2_by_value;
    r.lambda2_by_modulus = s.lambda2_by_modulus;
    r.spectral_gap = s.spectral_gap();
  } else {
    r.lambda2_by_value = std::numeric_limits<double>::quiet_NaN();
    r.lambda2_by_modulus = std::numeric_limits<double>::quiet_NaN();
    r.spectral_gap = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

CosetAction random_transitive_action(int n, int rank, std::uint64_t seed) {
  if (n < 1 || rank < 1) {
    throw std::invalid_argument("random action needs n >= 1 and rank >= 1");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    KeyedStream rng(seed, attempt);
    std::vector<Permutation> gens;
    for (int i = 0; i < rank; ++i) gens.push_back(random_permutation(n, rng));
    CosetAction action(std::move(gens));
    if (action.transitive()) return action;
  }
}

std::vector<CosetAction> cycle_tower(const CycleTowerShape& shape) {
  if (shape.base < 1 || shape.step < 1 || shape.depth < 1) {
    throw std::invalid_argument("tower needs base, step, depth >= 1");
  }
  if (shape.exponents.empty()) {
    throw std::invalid_argument("tower needs one exponent per generator");
  }
  std::vector<CosetAction> levels;
  std::int64_t m = shape.base;
  for (int j = 0; j < shape.depth; ++j) {
    if (j > 0) {
      if (m > shape.cap / shape.step) {
        throw CapExceeded("tower level " + std::to_string(j) + " exceeds the cap of " +
                          std::to_string(shape.cap) + " cosets");
      }
      m *= shape.step;
    }
    if (m > shape.cap) {
      throw CapExceeded("tower level size " + std::to_string(m) +
                        " exceeds the cap");
    }
    std::int64_t g = m;
    for (int e : shape.exponents) g = std::gcd(g, static_cast<std::int64_t>(e));
    if (g != 1) {
      throw InvalidAction("exponents do not generate Z/" + std::to_string(m));
    }
    std::vector<Permutation> gens;
    for (int e : shape.exponents) {
      const std::int64_t shift = ((e % m) + m) % m;
      Permutation p(static_cast<std::size_t>(m));
      for (std::int64_t q = 0; q < m; ++q) p[q] = static_cast<int>((q + shift) % m);
      gens.push_back(std::move(p));
    }
    levels.emplace_back(std::move(gens));
  }
  return levels;
}

}  // namespace isooe::schreier
