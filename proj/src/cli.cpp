#include "isooe/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "isooe/coloring.hpp"
#include "isooe/random.hpp"
#include "isooe/schreier.hpp"
#include "isooe/treeiso.hpp"
#include "isooe/words.hpp"

namespace isooe::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json make_report(const std::string& command, json config) {
  return {{"schemaVersion", kSchemaVersion},
          {"command", command},
          {"config", std::move(config)}};
}

schreier::CosetAction load_action(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open coset action file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return schreier::CosetAction::from_json(j);
  } catch (const Error& e) {
    throw UsageError("'" + path + "': " + e.what());
  }
}

// Tallies checks and keeps the first counterexample of every kind.
class CheckLog {
 public:
  void pass(const std::string& check) { ++counts_[check].first; }
  void fail(const std::string& check, json detail) {
    ++counts_[check].second;
    if (!first_failure_.contains(check)) first_failure_[check] = std::move(detail);
  }
  void expect(bool ok, const std::string& check, const auto& detail) {
    if (ok) {
      pass(check);
    } else {
      fail(check, detail());
    }
  }
  bool ok() const {
    return std::all_of(counts_.begin(), counts_.end(),
                       [](const auto& kv) { return kv.second.second == 0; });
  }
  json to_json() const {
    json checks = json::object();
    for (const auto& [name, c] : counts_) {
      json entry = {{"passed", c.first}, {"violations", c.second}};
      if (auto it = first_failure_.find(name); it != first_failure_.end()) {
        entry["counterexample"] = *it;
      }
      checks[name] = std::move(entry);
    }
    return checks;
  }

 private:
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts_;
  json first_failure_ = json::object();
};

int finish(json report, const CheckLog& log, std::ostream& out,
           std::ostream& err) {
  report["checks"] = log.to_json();
  report["ok"] = log.ok();
  out << report.dump(2) << "\n";
  if (!log.ok()) {
    err << "invariant violation; see the counterexample in the report\n";
    return kViolation;
  }
  return kOk;
}

// ---------------------------------------------------------------- schreier

int schreier_analyze(const std::string& path, std::ostream& out,
                     std::ostream& err) {
  const auto action = load_action(path);
  if (!action.transitive()) {
    throw UsageError("the action in '" + path +
                     "' is not transitive; it does not describe a subgroup");
  }
  json report = make_report("schreier analyze",
                            {{"file", path}, {"action", action.to_json()}});
  try {
    report["report"] = schreier::lemma_even_crosscheck(action).to_json();
  } catch (const schreier::EquivalenceViolation& e) {
    report["ok"] = false;
    report["error"] = e.what();
    out << report.dump(2) << "\n";
    err << e.what() << "\n";
    return kViolation;
  }
  out << report.dump(2) << "\n";
  return kOk;
}

int schreier_bruteforce(int points, int trials, int rank, std::uint64_t seed,
                        std::ostream& out, std::ostream& err) {
  if (points < 1 || trials < 0 || rank < 1) {
    throw UsageError("--points and --rank must be >= 1, --trials >= 0");
  }
  json report = make_report(
      "schreier bruteforce-lemma",
      {{"points", points}, {"trials", trials}, {"rank", rank}, {"seed", seed}});
  CheckLog log;
  std::int64_t bipartite = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = combine_keys(seed, static_cast<std::uint64_t>(t));
    const int n = 1 + static_cast<int>(trial_seed % static_cast<std::uint64_t>(points));
    const auto action = schreier::random_transitive_action(n, rank, trial_seed);
    try {
      const auto r = schreier::lemma_even_crosscheck(action, false);
      bipartite += r.bipartite ? 1 : 0;
      log.pass("lemma_even");
    } catch (const schreier::EquivalenceViolation& e) {
      log.fail("lemma_even", {{"trial", t},
                              {"seed", seed},
                              {"action", action.to_json()},
                              {"message", e.what()}});
    }
  }
  report["bipartiteCount"] = bipartite;
  return finish(std::move(report), log, out, err);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--exponents: '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw UsageError("--exponents needs at least one value");
  return out;
}

int tower_analyze(const schreier::CycleTowerShape& shape, std::ostream& out,
                  std::ostream& err) {
  std::vector<schreier::CosetAction> levels;
  try {
    levels = schreier::cycle_tower(shape);
  } catch (const Error& e) {
    throw UsageError(std::string("tower: ") + e.what());
  }
  struct Row {
    std::size_t size;
    bool bipartite;
    bool normal;
    double lambda2;
    double gap;
  };
  std::vector<Row> rows;
  for (const auto& level : levels) {
    Row row{static_cast<std::size_t>(level.size()), schreier::is_bipartite(level),
            schreier::is_normal(level), 1.0, 0.0};
    if (level.size() >= 2) {
      const auto s = schreier::spectral_gap(level);
      row.lambda2 = s.lambda2_by_value;
      row.gap = s.spectral_gap();
    }
    rows.push_back(row);
  }
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].bipartite) {
      err << "level " << j << " (size " << rows[j].size
          << ") has a bipartite Schreier graph; such a tower does not satisfy "
             "the non-bipartite hypothesis\n";
      return kUsage;
    }
  }
  std::string exps;
  for (std::size_t i = 0; i < shape.exponents.size(); ++i) {
    exps += (i ? "," : "") + std::to_string(shape.exponents[i]);
  }
  out << "# tower analyze base=" << shape.base << " step=" << shape.step
      << " depth=" << shape.depth << " exponents=" << exps << "\n";
  out << "level,size,bipartite,normal,lambda2,gap\n";
  for (std::size_t j = 0; j < rows.size(); ++j) {
    out << j << "," << rows[j].size << "," << (rows[j].bipartite ? "true" : "false")
        << "," << (rows[j].normal ? "true" : "false") << ","
        << format_double(rows[j].lambda2) << "," << format_double(rows[j].gap)
        << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- treeiso

json words_json(std::initializer_list<std::pair<const char*, const ReducedWord*>> ws) {
  json j = json::object();
  for (const auto& [k, w] : ws) j[k] = to_text(*w);
  return j;
}

int iso_verify(int rank, int radius, int samples, std::uint64_t seed,
               std::ostream& out, std::ostream& err) {
  if (rank < 1 || radius < 0 || samples < 0) {
    throw UsageError("--rank >= 1, --radius >= 0 and --samples >= 0 required");
  }
  json report = make_report("iso verify", {{"rank", rank},
                                           {"radius", radius},
                                           {"samples", samples},
                                           {"seed", seed}});
  const GroupPreset preset = GroupPreset::free(rank);
  const auto words = ball(preset, radius);
  const int half = radius / 2;
  const int action_len = std::min(2, radius / 2);
  CheckLog log;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = combine_keys(seed, static_cast<std::uint64_t>(s));
    const auto f = treeiso::haar_sample(rank, radius, sample_seed);
    auto where = [&](json extra) {
      extra["sample"] = s;
      extra["sampleSeed"] = sample_seed;
      return extra;
    };
    const auto err_text = f.validate();
    log.expect(!err_text, "validator", [&] { return where({{"message", *err_text}}); });

    const auto f_inv = treeiso::invert(f);
    log.expect(treeiso::invert(f_inv) == f, "double_inverse", [&] { return where({}); });

    std::vector<std::set<std::vector<Letter>>> spheres(radius + 1);
    for (const auto& w : words) {
      log.expect(treeiso::apply(f_inv, treeiso::apply(f, w)) == w, "inverse_roundtrip",
                 [&] { return where(words_json({{"w", &w}})); });
      const ReducedWord sg = treeiso::sigma(w, f);
      log.expect(sg.length() == w.length(), "sigma_length",
                 [&] { return where(words_json({{"gamma", &w}, {"sigma", &sg}})); });
      const bool fresh = spheres[w.length()].insert(sg.letters()).second;
      log.expect(fresh, "sigma_sphere_injective",
                 [&] { return where(words_json({{"gamma", &w}, {"sigma", &sg}})); });
    }
    for (const auto& delta : words) {
      if (static_cast<int>(delta.length()) > half) break;
      const auto delta_f = treeiso::gamma_dot(delta, f);
      const auto delta_err = delta_f.validate();
      log.expect(!delta_err, "gamma_dot_validator",
                 [&] { return where(words_json({{"gamma", &delta}})); });
      for (const auto& gamma : words) {
        if (static_cast<int>(gamma.length()) > half) break;
        log.expect(treeiso::cocycle_identity_check(gamma, delta, f), "cocycle_identity",
                   [&] { return where(words_json({{"gamma", &gamma}, {"delta", &delta}})); });
        if (static_cast<int>(gamma.length()) <= action_len &&
            static_cast<int>(delta.length()) <= action_len) {
          const auto lhs = treeiso::gamma_dot(multiply(gamma, delta), f);
          const auto rhs = treeiso::gamma_dot(gamma, delta_f);
          log.expect(lhs.agrees_with(rhs, rhs.radius()), "gamma_dot_action",
                     [&] { return where(words_json({{"gamma", &gamma}, {"delta", &delta}})); });
        }
      }
    }
  }
  return finish(std::move(report), log, out, err);
}

int oe_verify(int rank, int radius, const std::string& subgroup_path, int max_len,
              int samples, std::uint64_t seed, std::ostream& out,
              std::ostream& err) {
  const auto action = load_action(subgroup_path);
  if (!action.transitive()) {
    throw UsageError("the subgroup action must be transitive");
  }
  if (action.rank() != rank) {
    throw UsageError("--rank " + std::to_string(rank) +
                     " does not match the subgroup file (rank " +
                     std::to_string(action.rank()) + ")");
  }
  if (max_len < 0 || samples < 0) throw UsageError("--max-len and --samples must be >= 0");
  if (radius < treeiso::default_orbit_margin(max_len)) {
    throw UsageError("--radius must be at least 2*max-len+2 = " +
                     std::to_string(treeiso::default_orbit_margin(max_len)) +
                     " for sound orbit distances");
  }
  json report = make_report("oe verify", {{"rank", rank},
                                          {"radius", radius},
                                          {"subgroup", action.to_json()},
                                          {"maxLen", max_len},
                                          {"samples", samples},
                                          {"seed", seed}});
  const GroupPreset preset = GroupPreset::free(rank);
  const auto words = ball(preset, max_len);
  const int action_len = std::min(2, max_len);
  using treeiso::OrbitAction;
  CheckLog log;
  std::int64_t distance_equals_length = 0;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = combine_keys(seed, static_cast<std::uint64_t>(s));
    KeyedStream rng(sample_seed, 0xc05e7ULL);
    const treeiso::QuotientPoint p{
        treeiso::haar_sample(rank, radius, sample_seed),
        static_cast<int>(rng() % static_cast<std::uint64_t>(action.size()))};
    auto where = [&](json extra) {
      extra["sample"] = s;
      extra["sampleSeed"] = sample_seed;
      extra["coset"] = p.coset;
      return extra;
    };
    const auto psi_p = treeiso::psi(p);
    log.expect(treeiso::psi(psi_p) == p, "psi_involution", [&] { return where({}); });

    for (const auto& gamma : words) {
      const auto moved = treeiso::quotient_act(gamma, p, action);
      const auto lhs = treeiso::psi(moved);
      const auto rhs = treeiso::diagonal_act(treeiso::sigma(gamma, p.iso), psi_p, action);
      log.expect(lhs == rhs, "intertwining",
                 [&] { return where(words_json({{"gamma", &gamma}})); });

      const auto d_quot = treeiso::orbit_distance(p, moved, action,
                                                  OrbitAction::Quotient, max_len);
      const auto d_diag = treeiso::orbit_distance(psi_p, lhs, action,
                                                  OrbitAction::Diagonal, max_len);
      log.expect(d_quot == d_diag, "orbit_distance_preserved", [&] {
        json j = where(words_json({{"w", &gamma}}));
        j["quotient"] = d_quot ? json(*d_quot) : json(nullptr);
        j["diagonal"] = d_diag ? json(*d_diag) : json(nullptr);
        return j;
      });
      if (d_quot && *d_quot == static_cast<int>(gamma.length())) ++distance_equals_length;

      if (static_cast<int>(gamma.length()) > action_len) continue;
      for (const auto& delta : words) {
        if (static_cast<int>(delta.length()) > action_len) break;
        for (auto kind : {OrbitAction::Quotient, OrbitAction::Diagonal}) {
          const auto a = treeiso::act(kind, multiply(gamma, delta), p, action);
          const auto b = treeiso::act(kind, gamma, treeiso::act(kind, delta, p, action), action);
          const bool same = a.coset == b.coset && a.iso.agrees_with(b.iso, b.iso.radius());
          log.expect(same,
                     kind == OrbitAction::Quotient ? "quotient_action_law" : "diagonal_action_law",
                     [&] { return where(words_json({{"gamma", &gamma}, {"delta", &delta}})); });
        }
      }
    }
  }
  report["distanceEqualsWordLength"] = distance_equals_length;
  return finish(std::move(report), log, out, err);
}

// ---------------------------------------------------------------- coloring

int coloring_correlate(const std::string& action_name, const std::string& word_text,
                       int i, int j, std::optional<int> n_max, std::int64_t mc,
                       std::optional<std::uint64_t> seed, std::ostream& out) {
  coloring::Action action;
  if (action_name == "star") {
    action = coloring::Action::Star;
  } else if (action_name == "twisted") {
    action = coloring::Action::Twisted;
  } else {
    throw UsageError("--action must be star or twisted");
  }
  if (i < 1 || i > 5 || j < 1 || j > 5) throw UsageError("--i and --j must be colors 1..5");
  if (mc < 0) throw UsageError("--mc must be >= 0");
  if (mc > 0 && !seed) throw UsageError("--seed is required when --mc > 0");
  if (n_max && *n_max < 0) throw UsageError("--n-max must be >= 0");
  ReducedWord base(coloring::f2());
  try {
    base = parse_word(coloring::f2(), word_text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--word: ") + e.what());
  }

  std::vector<ReducedWord> words;
  if (n_max) {
    ReducedWord w(coloring::f2());
    for (int k = 0; k <= *n_max; ++k) {
      words.push_back(w);
      w = multiply(w, base);
    }
  } else {
    words.push_back(base);
  }

  out << "# coloring correlate action=" << action_name << " word=" << word_text
      << " i=" << i << " j=" << j;
  if (n_max) out << " n-max=" << *n_max;
  out << " mc=" << mc;
  if (seed) out << " seed=" << *seed;
  out << "\n";
  out << "n,word,exact,mc,stderr,samples\n";
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto& w = words[k];
    const double exact = action == coloring::Action::Star
                             ? coloring::exact_star_correlation(static_cast<int>(w.length()), j, i)
                             : coloring::exact_twisted_correlation(w, i, j);
    out << w.length() << "," << to_text(w) << "," << format_double(exact) << ",";
    if (mc > 0) {
      const auto row = coloring::mc_correlation(
          action, w, i, j, mc, combine_keys(*seed, static_cast<std::uint64_t>(k)));
      out << format_double(row.estimate) << "," << format_double(row.stderr_) << ","
          << row.samples;
    } else {
      out << ",,0";
    }
    out << "\n";
  }
  return kOk;
}

int coloring_verify(int samples, int max_len, std::uint64_t seed,
                    std::ostream& out, std::ostream& err) {
  if (samples < 0 || max_len < 0) throw UsageError("--samples and --max-len must be >= 0");
  json report = make_report("coloring verify",
                            {{"samples", samples}, {"maxLen", max_len}, {"seed", seed}});
  const coloring::FivePointPermutations perms;
  const GroupPreset preset = coloring::f2();
  const auto words = ball(preset, max_len);
  const auto short_words = ball(preset, std::min(2, max_len));
  const ReducedWord identity(preset);
  CheckLog log;
  for (int s = 0; s < samples; ++s) {
    const coloring::ColoringState state(combine_keys(seed, static_cast<std::uint64_t>(s)));
    auto where = [&](json extra) {
      extra["sample"] = s;
      extra["stateSeed"] = state.seed();
      return extra;
    };
    try {
      for (const auto& w : words) {
        if (static_cast<int>(w.length()) > 3) break;
        coloring::neighborhood(state, w);
      }
      log.pass("rainbow");
    } catch (const coloring::NotRainbow& e) {
      log.fail("rainbow", where({{"message", e.what()}}));
    }
    const coloring::Color root = coloring::color(state, identity);
    for (const auto& w : words) {
      const ReducedWord c = coloring::twisted_cocycle(w, state, perms);
      const auto moved = coloring::star_act(c, state);
      log.expect(coloring::color(moved, identity) == perms.pi(w, root), "root_equivariance",
                 [&] { return where(words_json({{"w", &w}})); });
      log.expect(c.length() == w.length(), "cocycle_length",
                 [&] { return where(words_json({{"w", &w}, {"cocycle", &c}})); });
      if (perms.pi(w, 1) == 1) {
        log.expect((root == 1) == (coloring::color(moved, identity) == 1),
                   "stabilizer_invariance", [&] { return where(words_json({{"w", &w}})); });
      }
    }
    for (const auto& u : short_words) {
      for (const auto& v : short_words) {
        const auto lhs = coloring::twisted_cocycle(multiply(u, v), state, perms);
        const auto rhs = multiply(
            coloring::twisted_cocycle(u, coloring::twisted_act(v, state, perms), perms),
            coloring::twisted_cocycle(v, state, perms));
        log.expect(lhs == rhs, "cocycle_multiplicativity",
                   [&] { return where(words_json({{"u", &u}, {"v", &v}})); });
      }
    }
    for (Letter x = 0; x < 4; ++x) {
      const ReducedWord g = ReducedWord::from_letters(preset, std::vector<Letter>{x});
      const auto back = coloring::twisted_act(invert(g), coloring::twisted_act(g, state, perms), perms);
      log.expect(back == state, "twisted_inverse",
                 [&] { return where(words_json({{"letter", &g}})); });
    }
  }
  return finish(std::move(report), log, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Isometric orbit equivalence toolkit for free groups", "isooe"};
  app.require_subcommand(1);

  auto* schreier_cmd = app.add_subcommand("schreier", "Schreier graph analyses");
  schreier_cmd->require_subcommand(1);
  auto* analyze = schreier_cmd->add_subcommand("analyze", "Analyze one coset action (JSON file)");
  std::string action_file;
  analyze->add_option("file", action_file, "coset action JSON")->required();

  auto* brute = schreier_cmd->add_subcommand(
      "bruteforce-lemma", "Cross-check the even-subgroup lemma on random actions");
  int points = 12;
  int trials = 1000;
  int brute_rank = 2;
  std::uint64_t brute_seed = 0;
  brute->add_option("--points", points, "maximum number of cosets");
  brute->add_option("--trials", trials, "number of random actions");
  brute->add_option("--rank", brute_rank, "rank of the free group");
  brute->add_option("--seed", brute_seed)->required();

  auto* tower_cmd = app.add_subcommand("tower", "Towers of normal subgroups");
  tower_cmd->require_subcommand(1);
  auto* tower_analyze_cmd = tower_cmd->add_subcommand("analyze", "Cycle tower report (CSV)");
  schreier::CycleTowerShape shape;
  std::string exponents = "1,1";
  tower_analyze_cmd->add_option("--base", shape.base);
  tower_analyze_cmd->add_option("--step", shape.step);
  tower_analyze_cmd->add_option("--depth", shape.depth);
  tower_analyze_cmd->add_option("--exponents", exponents, "comma separated, one per generator");

  auto* iso_cmd = app.add_subcommand("iso", "Truncated tree isometries");
  iso_cmd->require_subcommand(1);
  auto* iso_verify_cmd = iso_cmd->add_subcommand("verify", "Invariant suite for Haar samples");
  int iso_rank = 2;
  int iso_radius = 6;
  int iso_samples = 100;
  std::uint64_t iso_seed = 0;
  iso_verify_cmd->add_option("--rank", iso_rank);
  iso_verify_cmd->add_option("--radius", iso_radius);
  iso_verify_cmd->add_option("--samples", iso_samples);
  iso_verify_cmd->add_option("--seed", iso_seed)->required();

  auto* oe_cmd = app.add_subcommand("oe", "Quotient versus diagonal action");
  oe_cmd->require_subcommand(1);
  auto* oe_verify_cmd = oe_cmd->add_subcommand("verify", "Intertwining and distance checks");
  int oe_rank = 2;
  int oe_radius = 8;
  std::string subgroup_file;
  int oe_max_len = 3;
  int oe_samples = 100;
  std::uint64_t oe_seed = 0;
  oe_verify_cmd->add_option("--rank", oe_rank);
  oe_verify_cmd->add_option("--radius", oe_radius);
  oe_verify_cmd->add_option("--subgroup", subgroup_file, "coset action JSON")->required();
  oe_verify_cmd->add_option("--max-len", oe_max_len);
  oe_verify_cmd->add_option("--samples", oe_samples);
  oe_verify_cmd->add_option("--seed", oe_seed)->required();

  auto* coloring_cmd = app.add_subcommand("coloring", "The 5-coloring example on F2");
  coloring_cmd->require_subcommand(1);
  auto* correlate = coloring_cmd->add_subcommand("correlate", "Correlation series (CSV)");
  std::string corr_action = "star";
  std::string corr_word = "a";
  int corr_i = 1;
  int corr_j = 1;
  int corr_n_max = 0;
  std::int64_t corr_mc = 0;
  std::uint64_t corr_seed = 0;
  correlate->add_option("--action", corr_action, "star or twisted");
  correlate->add_option("--word", corr_word);
  correlate->add_option("--i", corr_i);
  correlate->add_option("--j", corr_j);
  auto* n_max_opt = correlate->add_option("--n-max", corr_n_max, "rows for word^0 .. word^n-max");
  correlate->add_option("--mc", corr_mc, "Monte Carlo samples per row (0 = exact only)");
  auto* corr_seed_opt = correlate->add_option("--seed", corr_seed);

  auto* coloring_verify_cmd = coloring_cmd->add_subcommand("verify", "Invariant suite");
  int col_samples = 1000;
  int col_max_len = 6;
  std::uint64_t col_seed = 0;
  coloring_verify_cmd->add_option("--samples", col_samples);
  coloring_verify_cmd->add_option("--max-len", col_max_len);
  coloring_verify_cmd->add_option("--seed", col_seed)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return schreier_analyze(action_file, out, err);
    if (*brute) return schreier_bruteforce(points, trials, brute_rank, brute_seed, out, err);
    if (*tower_analyze_cmd) {
      shape.exponents = parse_int_list(exponents);
      return tower_analyze(shape, out, err);
    }
    if (*iso_verify_cmd) return iso_verify(iso_rank, iso_radius, iso_samples, iso_seed, out, err);
    if (*oe_verify_cmd) {
      return oe_verify(oe_rank, oe_radius, subgroup_file, oe_max_len, oe_samples, oe_seed,
                       out, err);
    }
    if (*correlate) {
      return coloring_correlate(
          corr_action, corr_word, corr_i, corr_j,
          n_max_opt->count() ? std::optional<int>(corr_n_max) : std::nullopt, corr_mc,
          corr_seed_opt->count() ? std::optional<std::uint64_t>(corr_seed) : std::nullopt, out);
    }
    if (*coloring_verify_cmd) return coloring_verify(col_samples, col_max_len, col_seed, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace isooe::cli
