#include "nbmu/model.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "nbmu/errors.hpp"

namespace nbmu {

StateSet empty_set(std::size_t n) { return StateSet(n); }

StateSet full_set(std::size_t n) {
  StateSet s(n);
  s.set();
  return s;
}

StateSet singleton(std::size_t n, StateId s) {
  StateSet z(n);
  z.set(s);
  return z;
}

std::vector<StateId> members(const StateSet& z) {
  std::vector<StateId> out;
  out.reserve(z.count());
  for (auto i = z.find_first(); i != StateSet::npos; i = z.find_next(i)) out.push_back(i);
  return out;
}

std::set<Var> NeighborhoodModel::vocabulary() const {
  std::set<Var> out;
  for (const auto& [v, _] : valuation) out.insert(v);
  return out;
}

std::optional<StateId> NeighborhoodModel::find_state(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) return std::nullopt;
  return static_cast<StateId>(it - states.begin());
}

StateId NeighborhoodModel::state_id(const std::string& name) const {
  auto s = find_state(name);
  if (!s) throw std::out_of_range("unknown state '" + name + "'");
  return *s;
}

namespace {

using NameSet = std::set<std::string>;

NameSet names_of(const NeighborhoodModel& m, const StateSet& z) {
  NameSet out;
  for (auto i : members(z)) out.insert(m.states[i]);
  return out;
}

auto canonical(const NeighborhoodModel& m) {
  std::map<std::string, std::set<NameSet>> nbhd;
  for (StateId s = 0; s < m.size(); ++s) {
    auto& fam = nbhd[m.states[s]];
    for (const auto& g : m.gens[s]) fam.insert(names_of(m, g));
  }
  std::map<Var, NameSet> val;
  for (const auto& [v, z] : m.valuation) val[v] = names_of(m, z);
  std::optional<std::string> point;
  if (m.point) point = m.states[*m.point];
  return std::make_tuple(NameSet(m.states.begin(), m.states.end()), nbhd, val, point);
}

}  // namespace

bool operator==(const NeighborhoodModel& a, const NeighborhoodModel& b) {
  if (a.size() != b.size()) return false;
  return canonical(a) == canonical(b);
}

std::vector<std::string> validate(const NeighborhoodModel& m) {
  std::vector<std::string> out;
  const auto n = m.size();
  std::set<std::string> seen;
  for (const auto& s : m.states)
    if (!seen.insert(s).second) out.push_back("duplicate state '" + s + "'");
  if (m.gens.size() != n) {
    out.push_back("neighborhood table has " + std::to_string(m.gens.size()) + " entries for " +
                  std::to_string(n) + " states");
    return out;
  }
  for (StateId s = 0; s < n; ++s) {
    const auto& gs = m.gens[s];
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (gs[i].size() != n) {
        out.push_back("generator " + std::to_string(i) + " of '" + m.states[s] +
                      "' is not a subset of the states");
        continue;
      }
      for (std::size_t j = 0; j < gs.size(); ++j) {
        if (i == j || gs[j].size() != n) continue;
        if (gs[i].is_subset_of(gs[j]) && (gs[i] != gs[j] || i < j)) {
          out.push_back("generators of '" + m.states[s] + "' are not an antichain: generator " +
                        std::to_string(i) + " is contained in generator " + std::to_string(j));
        }
      }
    }
  }
  for (const auto& [v, z] : m.valuation)
    if (z.size() != n) out.push_back("valuation of '" + v + "' is not a subset of the states");
  if (m.point && *m.point >= n) out.push_back("designated point is not a state");
  return out;
}

void require_valid(const NeighborhoodModel& m) {
  auto problems = validate(m);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

bool contains_neighborhood(const NeighborhoodModel& m, StateId s, const StateSet& z) {
  return std::any_of(m.gens[s].begin(), m.gens[s].end(),
                     [&](const StateSet& g) { return g.is_subset_of(z); });
}

std::vector<StateSet> upward_closure(const NeighborhoodModel& m, StateId s, std::size_t max_states) {
  const auto n = m.size();
  if (n > max_states)
    throw GuardError("upward_closure: " + std::to_string(n) + " states exceeds the bound of " +
                     std::to_string(max_states));
  std::vector<StateSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    StateSet z(n, mask);
    if (contains_neighborhood(m, s, z)) out.push_back(std::move(z));
  }
  return out;
}

std::vector<StateSet> minimal_sets(std::vector<StateSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<StateSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < sets.size() && minimal; ++j)
      if (i != j && sets[j].is_proper_subset_of(sets[i])) minimal = false;
    if (minimal) out.push_back(sets[i]);
  }
  return out;
}

std::pair<NeighborhoodModel, std::vector<InsertionMap>> disjoint_union(
    const std::vector<NeighborhoodModel>& ms) {
  if (ms.empty()) throw std::invalid_argument("disjoint_union: no models");
  const auto vocab = ms.front().vocabulary();
  std::size_t total = 0;
  for (const auto& m : ms) {
    if (m.vocabulary() != vocab) throw std::invalid_argument("disjoint_union: vocabulary mismatch");
    total += m.size();
  }
  NeighborhoodModel out;
  out.states.reserve(total);
  out.gens.reserve(total);
  for (const auto& v : vocab) out.valuation[v] = empty_set(total);

  std::vector<InsertionMap> maps;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto& m = ms[i];
    InsertionMap ins{i, {}};
    for (StateId u = 0; u < m.size(); ++u) {
      ins.image.push_back(offset + u);
      out.states.push_back(m.states[u] + "#" + std::to_string(i));
    }
    auto embed = [&](const StateSet& z) {
      StateSet img(total);
      for (auto u : members(z)) img.set(offset + u);
      return img;
    };
    for (StateId u = 0; u < m.size(); ++u) {
      std::vector<StateSet> gs;
      gs.reserve(m.gens[u].size());
      for (const auto& g : m.gens[u]) gs.push_back(embed(g));
      out.gens.push_back(std::move(gs));
    }
    for (const auto& [v, z] : m.valuation) out.valuation[v] |= embed(z);
    maps.push_back(std::move(ins));
    offset += m.size();
  }
  return {std::move(out), std::move(maps)};
}

NeighborhoodModel from_kripke(const KripkeModel& k) {
  NeighborhoodModel m;
  m.states = k.states;
  m.valuation = k.valuation;
  for (const auto& succ : k.successors) m.gens.push_back({succ});
  return m;
}

KripkeModel to_kripke(const NeighborhoodModel& m) {
  KripkeModel k;
  k.states = m.states;
  k.valuation = m.valuation;
  for (StateId u = 0; u < m.size(); ++u) {
    StateSet meet = m.all();
    for (const auto& g : m.gens[u]) meet &= g;
    k.successors.push_back(std::move(meet));
  }
  return k;
}

std::vector<std::vector<StateSet>> antichains(std::size_t n) {
  if (n > 4) throw GuardError("antichains: more than 4 elements");
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<StateSet>> out;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t z = 0; z < subsets; ++z)
      if (family >> z & 1U) chosen.push_back(z);
    bool anti = true;
    for (auto a : chosen)
      for (auto b : chosen)
        if (a != b && (a & b) == a) anti = false;
    if (!anti) continue;
    std::vector<StateSet> fam;
    for (auto z : chosen) fam.emplace_back(n, z);
    out.push_back(std::move(fam));
  }
  return out;
}

std::vector<std::string> canonical_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

void enumerate_models(std::size_t n_states, const std::set<Var>& vocab,
                      const std::function<bool(const NeighborhoodModel&)>& visit,
                      EnumerationGuard guard) {
  if (n_states == 0 || n_states > guard.max_states || vocab.size() > guard.max_vocab)
    throw GuardError("enumerate_models: " + std::to_string(n_states) + " states over " +
                     std::to_string(vocab.size()) + " propositions is outside the guard");
  const auto families = antichains(n_states);
  const std::vector<Var> props(vocab.begin(), vocab.end());
  const std::uint64_t val_choices = std::uint64_t{1} << (n_states * props.size());

  std::vector<std::size_t> pick(n_states, 0);
  NeighborhoodModel m;
  m.states = canonical_names(n_states);
  m.gens.assign(n_states, {});
  for (;;) {
    for (std::size_t s = 0; s < n_states; ++s) m.gens[s] = families[pick[s]];
    for (std::uint64_t val = 0; val < val_choices; ++val) {
      for (std::size_t k = 0; k < props.size(); ++k)
        m.valuation[props[k]] = StateSet(n_states, (val >> (k * n_states)) & ((1U << n_states) - 1));
      if (!visit(m)) return;
    }
    std::size_t s = 0;
    while (s < n_states && ++pick[s] == families.size()) pick[s++] = 0;
    if (s == n_states) return;
  }
}

std::vector<NeighborhoodModel> all_models(std::size_t n_states, const std::set<Var>& vocab,
                                          EnumerationGuard guard) {
  std::vector<NeighborhoodModel> out;
  enumerate_models(
      n_states, vocab,
      [&](const NeighborhoodModel& m) {
        out.push_back(m);
        return true;
      },
      guard);
  return out;
}

NeighborhoodModel random_model(std::size_t n_states, const std::set<Var>& vocab,
                               const RandomModelParams& params, std::uint64_t seed) {
  if (n_states == 0) throw std::invalid_argument("random_model: need at least one state");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(params.neighborhood_density);
  std::bernoulli_distribution elem(params.element_density);
  std::bernoulli_distribution holds(params.valuation_density);

  NeighborhoodModel m;
  m.states = canonical_names(n_states);
  for (std::size_t s = 0; s < n_states; ++s) {
    std::vector<StateSet> cands;
    for (std::size_t c = 0; c < params.candidates; ++c) {
      if (!keep(rng)) continue;
      StateSet z(n_states);
      for (std::size_t t = 0; t < n_states; ++t)
        if (elem(rng)) z.set(t);
      cands.push_back(std::move(z));
    }
    m.gens.push_back(minimal_sets(std::move(cands)));
  }
  for (const auto& v : vocab) {
    StateSet z(n_states);
    for (std::size_t t = 0; t < n_states; ++t)
      if (holds(rng)) z.set(t);
    m.valuation[v] = std::move(z);
  }
  return m;
}

KripkeModel random_kripke(std::size_t n_states, const std::set<Var>& vocab, double edge_density,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(edge_density);
  std::bernoulli_distribution holds(0.5);
  KripkeModel k;
  k.states = canonical_names(n_states);
  for (std::size_t u = 0; u < n_states; ++u) {
    StateSet succ(n_states);
    for (std::size_t v = 0; v < n_states; ++v)
      if (edge(rng)) succ.set(v);
    k.successors.push_back(std::move(succ));
  }
  for (const auto& v : vocab) {
    StateSet z(n_states);
    for (std::size_t t = 0; t < n_states; ++t)
      if (holds(rng)) z.set(t);
    k.valuation[v] = std::move(z);
  }
  return k;
}

}  // namespace nbmu
