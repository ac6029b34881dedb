#include "nbmu/translate.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "nbmu/bisim.hpp"
#include "nbmu/denotation.hpp"
#include "nbmu/errors.hpp"
#include "nbmu/game.hpp"
#include "nbmu/model_io.hpp"
#include "nbmu/syntax.hpp"

namespace nbmu {

namespace {

using N = NmsoFormula;

class EqBuilder {
 public:
  explicit EqBuilder(NameSupply& names) : names_(names) {}

  NmsoFormula eq(const MuFormula& f, const Var& p) {
    switch (f.kind()) {
      case MuKind::Atom: return N::eqv(p, f.var());
      case MuKind::NegAtom: return complement(f.var(), p);
      case MuKind::Top: {
        Var x = names_.fresh("x");
        return N::forall(x, N::sub(x, p));
      }
      case MuKind::Bot: return N::empty(p);
      case MuKind::And: {
        // p is the largest set below both parts.
        Var r1 = names_.fresh("r"), r2 = names_.fresh("r"), x = names_.fresh("x");
        auto meet = N::forall(x, N::iff(N::sub(x, p), N::conj(N::sub(x, r1), N::sub(x, r2))));
        auto left = eq(f.left(), r1);
        auto right = eq(f.right(), r2);
        return N::exists(r1, N::exists(r2, N::conj_all({left, right, meet})));
      }
      case MuKind::Or: {
        // p is the smallest set above both parts.
        Var r1 = names_.fresh("r"), r2 = names_.fresh("r"), x = names_.fresh("x");
        auto join = N::forall(x, N::iff(N::sub(p, x), N::conj(N::sub(r1, x), N::sub(r2, x))));
        auto left = eq(f.left(), r1);
        auto right = eq(f.right(), r2);
        return N::exists(r1, N::exists(r2, N::conj_all({left, right, join})));
      }
      case MuKind::Box: {
        Var q = names_.fresh("q"), r = names_.fresh("r");
        return N::forall(q, N::iff(N::sub(q, p), N::exists(r, N::conj(eq(f.arg(), r), N::box_rel(q, r)))));
      }
      case MuKind::Dia: {
        // A state is in p iff the complement of the argument's extension is
        // not one of its neighborhoods.
        Var r = names_.fresh("r"), c = names_.fresh("c"), q = names_.fresh("q");
        auto pointwise = N::forall(
            q, N::implies(N::sing(q), N::iff(N::sub(q, p), N::negation(N::box_rel(q, c)))));
        auto inner = eq(f.arg(), r);
        auto compl_rc = complement(r, c);
        return N::exists(r, N::exists(c, N::conj_all({inner, compl_rc, pointwise})));
      }
      case MuKind::Mu:
      case MuKind::Nu: {
        Var other = names_.fresh(p);
        auto is_fixpoint = eq(rename_free(f.body(), f.var(), p), p);
        auto other_fixpoint = eq(rename_free(f.body(), f.var(), other), other);
        auto bound = f.kind() == MuKind::Mu ? N::sub(p, other) : N::sub(other, p);
        return N::conj(is_fixpoint, N::forall(other, N::implies(other_fixpoint, bound)));
      }
      case MuKind::GBox:
      case MuKind::GDia:
        throw std::invalid_argument("eq_formula: global modalities have no translation");
    }
    throw std::logic_error("eq_formula: unknown kind");
  }

 private:
  /// target is the complement of v.
  NmsoFormula complement(const Var& v, const Var& target) {
    Var x = names_.fresh("x");
    return N::forall(x, N::implies(N::sing(x), N::iff(N::sub(x, target), N::negation(N::sub(x, v)))));
  }

  NameSupply& names_;
};

void check_translatable(const MuFormula& f) {
  if (!is_global_free(f)) throw std::invalid_argument("eq_formula: formula contains a global modality");
  if (!is_positive(f)) throw std::invalid_argument("eq_formula: bound variable under negation");
  if (!is_well_named(f)) throw std::invalid_argument("eq_formula: formula is not well-named");
}

}  // namespace

NmsoFormula eq_formula(const MuFormula& f, const Var& p) {
  check_translatable(f);
  auto used = all_vars(f);
  if (used.count(p)) throw std::invalid_argument("eq_formula: '" + p + "' occurs in the formula");
  used.insert(p);
  NameSupply names(std::move(used));
  return EqBuilder(names).eq(f, p);
}

NmsoFormula to_nmso(const MuFormula& f) {
  check_translatable(f);
  NameSupply names(all_vars(f));
  const Var p = names.fresh("p");
  auto eq = EqBuilder(names).eq(f, p);
  const Var q = names.fresh("q");
  return N::exists(p, N::exists(q, N::conj_all({N::sr(q), N::sub(q, p), eq})));
}

UniverseModel build_universe(std::size_t max_states, const std::set<Var>& vocab, UniverseGuard guard) {
  if (max_states == 0 || max_states > guard.max_states || vocab.size() > guard.max_vocab)
    throw GuardError("build_universe: bound " + std::to_string(max_states) + " over " +
                     std::to_string(vocab.size()) + " propositions is outside the guard");
  EnumerationGuard eg{std::max<std::size_t>(3, max_states), std::max<std::size_t>(2, vocab.size())};
  std::vector<NeighborhoodModel> parts;
  for (std::size_t k = 1; k <= max_states; ++k) {
    auto ms = all_models(k, vocab, eg);
    parts.insert(parts.end(), std::make_move_iterator(ms.begin()), std::make_move_iterator(ms.end()));
  }
  UniverseModel u;
  u.model = disjoint_union(parts).first;
  u.max_states = max_states;
  u.vocab = vocab;
  return u;
}

std::string write_universe(const UniverseModel& u) {
  auto doc = nlohmann::ordered_json::parse(write_model(u.model));
  doc["provenance"] = {{"max_states", u.max_states},
                       {"vocab", std::vector<Var>(u.vocab.begin(), u.vocab.end())}};
  return doc.dump();
}

UniverseModel read_universe(std::string_view text) {
  UniverseModel u;
  u.model = read_model(text);
  auto doc = nlohmann::json::parse(text);
  if (!doc.contains("provenance")) throw ValidationError({"universe document has no \"provenance\""});
  const auto& prov = doc["provenance"];
  if (!prov.contains("max_states") || !prov["max_states"].is_number_unsigned() || !prov.contains("vocab") ||
      !prov["vocab"].is_array())
    throw ValidationError({"malformed \"provenance\""});
  u.max_states = prov["max_states"].get<std::size_t>();
  for (const auto& v : prov["vocab"]) u.vocab.insert(v.get<std::string>());
  if (u.vocab != u.model.vocabulary())
    throw ValidationError({"provenance vocabulary differs from the model's valuation"});
  return u;
}

std::pair<MuFormula, TranslationTable> eliminate_global(const MuFormula& f, const UniverseModel& u) {
  auto arena = build_arena(u.model, f);
  auto sol = solve(arena);
  TranslationTable table;
  for (std::size_t k = 0; k < arena.subformulas.size(); ++k)
    table.winning.emplace(arena.subformulas[k], winning_states(arena, sol, k));

  std::function<MuFormula(const MuFormula&)> tr = [&](const MuFormula& g) -> MuFormula {
    if (auto it = table.translation.find(g); it != table.translation.end()) return it->second;
    MuFormula out = g;
    switch (g.kind()) {
      case MuKind::Atom:
      case MuKind::NegAtom:
      case MuKind::Top:
      case MuKind::Bot:
        break;
      case MuKind::And: out = MuFormula::conj(tr(g.left()), tr(g.right())); break;
      case MuKind::Or: out = MuFormula::disj(tr(g.left()), tr(g.right())); break;
      case MuKind::Box: out = MuFormula::box(tr(g.arg())); break;
      case MuKind::Dia: out = MuFormula::dia(tr(g.arg())); break;
      case MuKind::Mu: out = MuFormula::mu(g.var(), tr(g.body())); break;
      case MuKind::Nu: out = MuFormula::nu(g.var(), tr(g.body())); break;
      case MuKind::GBox:
        tr(g.arg());
        out = table.winning.at(g.arg()).all() ? MuFormula::top() : MuFormula::bot();
        break;
      case MuKind::GDia:
        tr(g.arg());
        out = table.winning.at(g.arg()).any() ? MuFormula::top() : MuFormula::bot();
        break;
    }
    table.translation.emplace(g, out);
    return out;
  };
  tr(f);
  auto root = table.translation.at(f);
  return {std::move(root), std::move(table)};
}

LemmaReport main_lemma_check(const MuFormula& f, const NeighborhoodModel& m, const UniverseModel& u) {
  return main_lemma_check(f, eliminate_global(f, u).first, m, u);
}

LemmaReport main_lemma_check(const MuFormula& f, const MuFormula& translated, const NeighborhoodModel& m,
                             const UniverseModel& u) {
  if (m.size() > u.max_states)
    throw std::invalid_argument("main_lemma_check: model has more states than the universe covers");
  if (m.vocabulary() != u.vocab) throw std::invalid_argument("main_lemma_check: vocabulary mismatch");
  LemmaReport report{translated, 0, {}};
  const auto local = eval_mu(m, translated);
  auto [joined, maps] = disjoint_union({u.model, m});
  const auto global = eval_mu(joined, f);
  for (StateId s = 0; s < m.size(); ++s) {
    if (local.test(s) == global.test(maps[1].image[s]))
      ++report.agreements;
    else
      report.mismatches.push_back(m.states[s]);
  }
  return report;
}

std::string ProbeReport::summary() const {
  std::string out = std::to_string(pairs_checked) + " bisimilar pairs checked, " +
                    std::to_string(counterexamples.size()) + " counterexamples";
  if (counterexamples.empty()) out += " (agreement on samples is evidence of invariance, not a proof)";
  return out;
}

namespace {

/// Copy of m with an extra state mirroring `s`; generators mentioning s may
/// point at the copy instead. The copy is bisimilar to s.
NeighborhoodModel duplicate_state(const NeighborhoodModel& m, StateId s, std::mt19937_64& rng) {
  const auto n = m.size();
  NeighborhoodModel out;
  out.states = m.states;
  out.states.push_back(m.states[s] + "_copy");
  auto widen = [&](const StateSet& z) {
    StateSet w = z;
    w.resize(n + 1);
    return w;
  };
  std::bernoulli_distribution swap(0.5);
  for (StateId t = 0; t <= n; ++t) {
    const auto& src = m.gens[t == n ? s : t];
    std::vector<StateSet> gs;
    for (const auto& g : src) {
      auto w = widen(g);
      if (w.test(s) && swap(rng)) {
        w.reset(s);
        w.set(n);
      }
      gs.push_back(std::move(w));
    }
    out.gens.push_back(minimal_sets(std::move(gs)));
  }
  for (const auto& [v, z] : m.valuation) {
    auto w = widen(z);
    if (z.test(s)) w.set(n);
    out.valuation[v] = std::move(w);
  }
  return out;
}

}  // namespace

ProbeReport invariance_probe(const MuFormula& f, const ProbeSpec& spec, std::uint64_t seed) {
  const auto vocab = free_vars(f);
  ProbeReport report;
  auto check = [&](NeighborhoodModel left, StateId l, NeighborhoodModel right, StateId r, std::string how) {
    if (!bisimilar(left, l, right, r)) throw std::logic_error("invariance_probe: constructed pair is not bisimilar");
    ++report.pairs_checked;
    if (eval_mu(left, f).test(l) != eval_mu(right, f).test(r)) {
      left.point = l;
      right.point = r;
      report.counterexamples.push_back({std::move(left), std::move(right), std::move(how)});
    }
  };

  if (spec.exhaustive_small && vocab.size() <= 2) {
    const auto singles = all_models(1, vocab);
    for (const auto& a : singles) {
      for (const auto& b : singles) {
        auto [joined, maps] = disjoint_union({a, b});
        check(a, 0, std::move(joined), maps[0].image[0], "insertion into a disjoint union");
      }
    }
  }

  std::mt19937_64 rng(seed);
  const RandomModelParams params;
  for (std::size_t i = 0; i < spec.random_samples; ++i) {
    std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, spec.max_states));
    auto a = random_model(size(rng), vocab, params, rng());
    std::uniform_int_distribution<StateId> pick(0, a.size() - 1);
    const auto s = pick(rng);
    if (i % 2 == 0) {
      auto b = random_model(size(rng), vocab, params, rng());
      auto [joined, maps] = disjoint_union({a, b});
      check(a, s, std::move(joined), maps[0].image[s], "insertion into a disjoint union");
    } else {
      auto dup = duplicate_state(a, s, rng);
      const auto copy = dup.size() - 1;
      check(std::move(a), s, std::move(dup), copy, "duplicated state");
    }
  }
  return report;
}

}  // namespace nbmu
