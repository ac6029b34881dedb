#include "nbmu/properties.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "nbmu/bisim.hpp"
#include "nbmu/denotation.hpp"
#include "nbmu/game.hpp"
#include "nbmu/generators.hpp"
#include "nbmu/model_io.hpp"
#include "nbmu/parser.hpp"
#include "nbmu/syntax.hpp"
#include "nbmu/translate.hpp"

namespace nbmu {

std::string SuiteReport::to_json() const {
  using json = nlohmann::ordered_json;
  json doc;
  doc["suite"] = suite;
  doc["samples"] = samples;
  doc["failures"] = json::array();
  for (const auto& f : failures) {
    json entry;
    entry["seed"] = f.seed;
    entry["model"] = f.model ? json::parse(write_model(*f.model)) : json(nullptr);
    entry["formula"] = f.formula;
    if (f.other) entry["other_model"] = json::parse(write_model(*f.other));
    if (!f.detail.empty()) entry["detail"] = f.detail;
    doc["failures"].push_back(std::move(entry));
  }
  return doc.dump();
}

namespace {

struct Context {
  const SuiteOptions& options;
  SuiteReport& report;

  std::size_t samples(std::size_t fallback) const { return options.samples ? options.samples : fallback; }
  std::size_t universe() const { return options.universe ? options.universe : 1; }

  void fail(std::uint64_t seed, std::optional<NeighborhoodModel> model, const std::string& formula,
            std::string detail, std::optional<NeighborhoodModel> other = std::nullopt) {
    report.failures.push_back({seed, std::move(model), std::move(other), formula, std::move(detail)});
  }
};

std::set<Var> random_vocab(std::mt19937_64& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? std::set<Var>{"p"} : std::set<Var>{"p", "q"};
}

NeighborhoodModel sample_model(std::mt19937_64& rng, std::size_t max_states, const std::set<Var>& vocab) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  const auto n = size(rng);
  return random_model(n, vocab, RandomModelParams{}, rng());
}

UniverseModel universe_for(const Context& ctx) {
  UniverseGuard guard;
  if (ctx.options.force) guard = {std::numeric_limits<std::size_t>::max(), std::numeric_limits<std::size_t>::max()};
  return build_universe(ctx.universe(), {"p"}, guard);
}

/// Every model over vocab with 1..k states.
std::vector<NeighborhoodModel> small_models(std::size_t k, const std::set<Var>& vocab) {
  std::vector<NeighborhoodModel> out;
  EnumerationGuard guard{std::max<std::size_t>(3, k), std::max<std::size_t>(2, vocab.size())};
  for (std::size_t n = 1; n <= k; ++n) {
    auto ms = all_models(n, vocab, guard);
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

std::string members_text(const NeighborhoodModel& m, const StateSet& z) {
  std::string out = "{";
  for (auto s : members(z)) out += (out.size() > 1 ? "," : "") + m.states[s];
  return out + "}";
}

// adequacy and determinacy share their samples
struct GameSample {
  NeighborhoodModel model;
  MuFormula formula;
};

GameSample game_sample(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto vocab = random_vocab(rng);
  auto m = sample_model(rng, 5, vocab);
  FormulaParams fp;
  fp.max_depth = 6;
  fp.vocab = vocab;
  fp.global = true;
  return {std::move(m), random_formula(fp, rng)};
}

void adequacy(Context& ctx) {
  const auto n = ctx.samples(500);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    const auto [m, f] = game_sample(seed);
    const auto arena = build_arena(m, f);
    const auto sol = solve(arena);
    const auto vocab = m.vocabulary();
    for (std::size_t k = 0; k < arena.subformulas.size(); ++k) {
      const auto& g = arena.subformulas[k];
      const auto fv = free_vars(g);
      if (!std::includes(vocab.begin(), vocab.end(), fv.begin(), fv.end())) continue;
      const auto game = winning_states(arena, sol, k);
      const auto denot = eval_mu(m, g);
      if (game != denot) {
        ctx.fail(seed, m, print_mu(f),
                 "subformula " + print_mu(g) + ": game " + members_text(m, game) + ", semantics " +
                     members_text(m, denot));
        break;
      }
    }
    ++ctx.report.samples;
  }
}

void determinacy(Context& ctx) {
  const auto n = ctx.samples(500);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    const auto [m, f] = game_sample(seed);
    const auto arena = build_arena(m, f);
    const auto sol = solve(arena);
    for (std::size_t p = 0; p < arena.size(); ++p) {
      if (sol.win_eloise[p] == sol.win_abelard[p]) {
        ctx.fail(seed, m, print_mu(f), "winning regions do not partition position " + std::to_string(p));
        break;
      }
    }
    for (auto player : {Player::Eloise, Player::Abelard}) {
      if (!verify_strategy(arena, sol, player))
        ctx.fail(seed, m, print_mu(f),
                 std::string(player == Player::Eloise ? "Eloise" : "Abelard") + " strategy fails verification");
    }
    ++ctx.report.samples;
  }
}

void union_closure(Context& ctx) {
  const auto n = ctx.samples(200);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    const auto vocab = random_vocab(rng);
    const auto a = sample_model(rng, 3, vocab);
    const auto b = sample_model(rng, 3, vocab);
    const auto [joined, maps] = disjoint_union({a, b});
    auto fail = [&](const std::string& what) { ctx.fail(seed, a, "", what, b); };

    // Two bisimulations between a and a+b: the first insertion, and the
    // greatest bisimulation between a and b pushed through the second.
    const auto r1 = insertion_graph(maps[0], joined.size());
    Relation r2(a.size(), joined.size());
    for (const auto& [s, t] : greatest_bisimulation(a, b).pairs()) r2.add(s, maps[1].image[t]);
    auto both = r1;
    both |= r2;
    if (!is_bisimulation(a, joined, r1)) fail("insertion graph is not a bisimulation");
    if (!is_bisimulation(a, joined, r2)) fail("transported bisimulation is not a bisimulation");
    if (!is_bisimulation(a, joined, both)) fail("union of bisimulations is not a bisimulation");

    const auto g = greatest_bisimulation(a, joined);
    if (!is_bisimulation(a, joined, g)) fail("greatest bisimulation is not a bisimulation");
    for (const auto& [s, t] : both.pairs())
      if (!g.contains(s, t)) fail("greatest bisimulation misses a bisimilar pair");
    for (StateId s = 0; s < a.size(); ++s) {
      for (StateId t = 0; t < joined.size(); ++t) {
        if (g.contains(s, t)) continue;
        auto bigger = g;
        bigger.add(s, t);
        if (is_bisimulation(a, joined, bigger)) fail("greatest bisimulation is not maximal");
      }
    }
    ++ctx.report.samples;
  }
}

void invariance(Context& ctx) {
  const auto n = ctx.samples(200);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    const auto vocab = random_vocab(rng);
    const auto a = sample_model(rng, 4, vocab);
    const auto b = sample_model(rng, 3, vocab);
    const auto [joined, maps] = disjoint_union({a, b});
    const auto g = greatest_bisimulation(a, joined);
    for (StateId s = 0; s < a.size(); ++s)
      if (!g.contains(s, maps[0].image[s])) ctx.fail(seed, a, "", "insertion pair is not bisimilar", b);

    FormulaParams fp;
    fp.max_depth = 5;
    fp.vocab = vocab;
    for (int j = 0; j < 20; ++j) {
      const auto f = random_formula(fp, rng);
      const auto left = eval_mu(a, f);
      const auto right = eval_mu(joined, f);
      for (StateId s = 0; s < a.size(); ++s) {
        if (left.test(s) != right.test(maps[0].image[s])) {
          ctx.fail(seed, a, print_mu(f), "differs at " + a.states[s] + " and its insertion", b);
          break;
        }
      }
    }
    ++ctx.report.samples;
  }
}

/// Relation from U + S to U: identity on the U part, and each state of S to
/// every U state bisimilar to it.
Relation universe_relation(const UniverseModel& u, const NeighborhoodModel& s, const NeighborhoodModel& joined,
                           const std::vector<InsertionMap>& maps) {
  Relation r(joined.size(), u.model.size());
  for (StateId x = 0; x < u.model.size(); ++x) r.add(maps[0].image[x], x);
  for (const auto& [t, x] : greatest_bisimulation(s, u.model).pairs()) r.add(maps[1].image[t], x);
  return r;
}

void universe_suite(Context& ctx, bool with_formulas) {
  const auto u = universe_for(ctx);
  const auto models = small_models(u.max_states, u.vocab);
  const auto per_model = ctx.samples(20);
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    const auto& s = models[i];
    const auto [joined, maps] = disjoint_union({u.model, s});
    const auto r = universe_relation(u, s, joined, maps);
    if (!is_bisimulation(joined, u.model, r)) ctx.fail(seed, s, "", "constructed relation is not a bisimulation");
    if (!r.full()) ctx.fail(seed, s, "", "constructed relation is not full");
    if (with_formulas) {
      std::mt19937_64 rng(seed);
      FormulaParams fp;
      fp.max_depth = 4;
      fp.vocab = u.vocab;
      fp.global = true;
      for (std::size_t j = 0; j < per_model; ++j) {
        const auto f = random_formula(fp, rng);
        const auto left = eval_mu(joined, f);
        const auto right = eval_mu(u.model, f);
        for (const auto& [x, y] : r.pairs()) {
          if (left.test(x) != right.test(y)) {
            ctx.fail(seed, s, print_mu(f), "differs at related pair " + joined.states[x] + ", " + u.model.states[y]);
            break;
          }
        }
      }
    }
    ++ctx.report.samples;
  }
}

void kripke_roundtrip(Context& ctx) {
  const auto n = ctx.samples(100);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    const auto vocab = random_vocab(rng);
    const auto size = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const auto k = random_kripke(size, vocab, 0.4, rng());
    const auto m = from_kripke(k);
    if (!(to_kripke(m) == k)) ctx.fail(seed, m, "", "to_kripke(from_kripke(k)) differs from k");
    ++ctx.report.samples;
  }
}

void generator_oracle(Context& ctx) {
  const auto n = ctx.samples(1000);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    const auto vocab = random_vocab(rng);
    const auto m = sample_model(rng, 3, vocab);
    FormulaParams fp;
    fp.max_depth = 4;
    fp.vocab = vocab;
    fp.global = true;
    const auto f = random_formula(fp, rng);
    const auto small = build_arena(m, f, NeighborhoodMode::Generators);
    const auto large = build_arena(m, f, NeighborhoodMode::UpwardClosure);
    const auto s1 = solve(small);
    const auto s2 = solve(large);
    for (std::size_t k = 0; k < small.subformulas.size(); ++k) {
      if (winning_states(small, s1, k) != winning_states(large, s2, k)) {
        ctx.fail(seed, m, print_mu(f), "basic regions differ at " + print_mu(small.subformulas[k]));
        break;
      }
    }
    const auto other = sample_model(rng, 3, vocab);
    if (!(greatest_bisimulation(m, other, NeighborhoodMode::Generators) ==
          greatest_bisimulation(m, other, NeighborhoodMode::UpwardClosure)))
      ctx.fail(seed, m, "", "generator and closure refinement differ", other);
    ++ctx.report.samples;
  }
}

void eq_translation(Context& ctx) {
  const auto n = ctx.samples(200);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    const auto vocab = random_vocab(rng);
    const auto m = sample_model(rng, 4, vocab);
    FormulaParams fp;
    fp.max_depth = 3;
    fp.vocab = vocab;
    const auto f = random_formula(fp, rng);
    const auto c = to_nmso(f);
    const auto ext = eval_mu(m, f);
    for (StateId s = 0; s < m.size(); ++s) {
      if (eval_nmso(PointedModel{m, s}, c) != ext.test(s)) {
        ctx.fail(seed, m, print_mu(f), "translation differs at " + m.states[s]);
        break;
      }
    }
    ++ctx.report.samples;
  }
}

void binddef(Context& ctx) {
  const auto u = universe_for(ctx);
  const auto n = ctx.samples(100);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    FormulaParams fp;
    fp.max_depth = 4;
    fp.vocab = u.vocab;
    fp.global = true;
    const auto f = random_formula(fp, rng);
    const auto [tf, table] = eliminate_global(f, u);
    for (const auto& v : bound_vars(tf)) {
      if (!(binding_definition(tf, v) == table.translation.at(binding_definition(f, v)))) {
        ctx.fail(seed, std::nullopt, print_mu(f), "binding definition of " + v + " does not commute");
        break;
      }
    }
    fp.global = false;
    const auto g = random_formula(fp, rng);
    if (!(eliminate_global(g, u).first == g))
      ctx.fail(seed, std::nullopt, print_mu(g), "global-free formula changed by elimination");
    ++ctx.report.samples;
  }
}

void main_lemma(Context& ctx) {
  const auto u = universe_for(ctx);
  const auto models = small_models(u.max_states, u.vocab);
  const auto n = ctx.samples(100);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    FormulaParams fp;
    fp.max_depth = 4;
    fp.vocab = u.vocab;
    fp.global = true;
    const auto f = random_formula(fp, seed);
    const auto tf = eliminate_global(f, u).first;
    for (const auto& s : models) {
      const auto r = main_lemma_check(f, tf, s, u);
      if (!r.ok()) {
        ctx.fail(seed, s, print_mu(f), "translation " + print_mu(tf) + " differs at " + r.mismatches.front());
        break;
      }
    }
    ++ctx.report.samples;
  }
}

void fixpoints(Context& ctx) {
  const auto n = ctx.samples(200);
  for (std::size_t i = 0; i < n; ++i) {
    const auto seed = sample_seed(ctx.options.seed, i);
    std::mt19937_64 rng(seed);
    const auto vocab = random_vocab(rng);
    const auto m = sample_model(rng, 4, vocab);
    FormulaParams fp;
    fp.max_depth = 5;
    fp.vocab = vocab;
    fp.binder_root = true;
    const auto f = random_formula(fp, rng);
    for (const auto& g : subformulas(f)) {
      if (!g.is_binder()) continue;
      const auto fv = free_vars(g);
      if (!std::includes(vocab.begin(), vocab.end(), fv.begin(), fv.end())) continue;
      auto fail = [&](const std::string& what) { ctx.fail(seed, m, print_mu(f), print_mu(g) + ": " + what); };
      const auto chain = approximants(m, g, m.size() + 1);
      const bool least = g.kind() == MuKind::Mu;
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const auto& lo = least ? chain[k] : chain[k + 1];
        const auto& hi = least ? chain[k + 1] : chain[k];
        if (!lo.is_subset_of(hi)) fail("approximants are not monotone");
      }
      if (chain.size() > m.size() + 1) fail("approximants do not stabilize within |S| steps");
      const auto ext = eval_mu(m, g);
      if (chain.back() != ext) fail("stable approximant differs from the extension");
      if (eval_mu(m, g.body(), Environment{{g.var(), ext}}) != ext) fail("extension is not a fixpoint");
    }
    ++ctx.report.samples;
  }
}

using SuiteFn = std::function<void(Context&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"union-closure", union_closure},
      {"adequacy", adequacy},
      {"determinacy", determinacy},
      {"invariance", invariance},
      {"global-invariance", [](Context& c) { universe_suite(c, true); }},
      {"kripke-roundtrip", kripke_roundtrip},
      {"generator-oracle", generator_oracle},
      {"eq-translation", eq_translation},
      {"binddef", binddef},
      {"usim", [](Context& c) { universe_suite(c, false); }},
      {"main-lemma", main_lemma},
      {"fixpoints", fixpoints},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "union-closure",    "adequacy",       "determinacy", "invariance", "global-invariance", "kripke-roundtrip",
      "generator-oracle", "eq-translation", "binddef",     "usim",       "main-lemma",        "fixpoints"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& suites = registry();
  auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  SuiteReport report{name, 0, {}};
  Context ctx{options, report};
  it->second(ctx);
  return report;
}

}  // namespace nbmu
