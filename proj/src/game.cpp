#include "nbmu/game.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "nbmu/parser.hpp"
#include "nbmu/syntax.hpp"

namespace nbmu {

std::size_t Arena::formula_index(const MuFormula& f) const {
  auto it = std::find(subformulas.begin(), subformulas.end(), f);
  if (it == subformulas.end()) throw std::out_of_range("not a subformula: " + print_mu(f));
  return static_cast<std::size_t>(it - subformulas.begin());
}

std::map<Var, unsigned> assign_priorities(const MuFormula& f) {
  std::map<Var, unsigned> out;
  unsigned prev = 0;
  for (const auto& rv : rank_order(f)) {
    unsigned p = prev + 1;
    const bool want_odd = rv.kind == Binder::Least;
    if ((p % 2 == 1) != want_odd) ++p;
    out[rv.name] = p;
    prev = p;
  }
  return out;
}

Arena build_arena(const NeighborhoodModel& m, const MuFormula& f, NeighborhoodMode mode) {
  if (!is_well_named(f)) throw std::invalid_argument("build_arena: formula is not well-named");
  for (const auto& v : free_vars(f))
    if (!m.valuation.count(v)) throw std::invalid_argument("variable '" + v + "' is not in the model's vocabulary");

  Arena a;
  a.subformulas = subformulas(f);
  a.num_states = m.size();
  const auto nsub = a.subformulas.size();
  const auto n = m.size();

  std::map<MuFormula, std::size_t> index;
  for (std::size_t k = 0; k < nsub; ++k) index.emplace(a.subformulas[k], k);
  const auto bound = bound_vars(f);
  std::map<Var, std::size_t> definition;
  for (const auto& v : bound) definition[v] = index.at(binding_definition(f, v));
  const auto prio = assign_priorities(f);

  std::vector<std::vector<StateSet>> nbhds(n);
  for (StateId s = 0; s < n; ++s)
    nbhds[s] = mode == NeighborhoodMode::Generators ? m.gens[s] : upward_closure(m, s);

  const auto nbasic = n * nsub;
  a.positions.resize(nbasic);
  a.owner.assign(nbasic, Player::Eloise);
  a.moves.assign(nbasic, {});
  a.priority.assign(nbasic, 0);

  std::map<std::tuple<Player, StateSet, std::size_t>, std::size_t> intermediate;
  auto intermediate_pos = [&](Player chooser, const StateSet& z, std::size_t k) {
    auto key = std::make_tuple(chooser, z, k);
    if (auto it = intermediate.find(key); it != intermediate.end()) return it->second;
    const auto id = a.positions.size();
    Position p;
    p.kind = Position::Kind::Intermediate;
    p.chooser = chooser;
    p.neighborhood = z;
    p.formula = k;
    a.positions.push_back(std::move(p));
    a.owner.push_back(chooser);
    std::vector<std::size_t> mv;
    for (auto t : members(z)) mv.push_back(a.basic(t, k));
    a.moves.push_back(std::move(mv));
    a.priority.push_back(0);
    intermediate.emplace(key, id);
    return id;
  };

  for (StateId s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < nsub; ++k) {
      const auto id = a.basic(s, k);
      const auto& g = a.subformulas[k];
      a.positions[id].state = s;
      a.positions[id].formula = k;
      Player owner = Player::Eloise;
      std::vector<std::size_t> mv;
      auto holds = [&](const Var& v) { return m.valuation.at(v).test(s); };
      switch (g.kind()) {
        case MuKind::Atom:
          if (bound.count(g.var())) {
            mv.push_back(a.basic(s, definition.at(g.var())));
            a.priority[id] = prio.at(g.var());
          } else {
            owner = holds(g.var()) ? Player::Abelard : Player::Eloise;
          }
          break;
        case MuKind::NegAtom:
          owner = holds(g.var()) ? Player::Eloise : Player::Abelard;
          break;
        case MuKind::Top: owner = Player::Abelard; break;
        case MuKind::Bot: owner = Player::Eloise; break;
        case MuKind::Or:
        case MuKind::And:
          owner = g.kind() == MuKind::Or ? Player::Eloise : Player::Abelard;
          mv.push_back(a.basic(s, index.at(g.left())));
          if (g.left() != g.right()) mv.push_back(a.basic(s, index.at(g.right())));
          break;
        case MuKind::Box:
        case MuKind::Dia: {
          // Box: Eloise proposes a neighborhood, Abelard picks a member; Dia dually.
          owner = g.kind() == MuKind::Box ? Player::Eloise : Player::Abelard;
          const auto k_arg = index.at(g.arg());
          for (const auto& z : nbhds[s]) mv.push_back(intermediate_pos(opponent(owner), z, k_arg));
          break;
        }
        case MuKind::GBox:
        case MuKind::GDia: {
          owner = g.kind() == MuKind::GDia ? Player::Eloise : Player::Abelard;
          const auto k_arg = index.at(g.arg());
          for (StateId t = 0; t < n; ++t) mv.push_back(a.basic(t, k_arg));
          break;
        }
        case MuKind::Mu:
        case MuKind::Nu:
          mv.push_back(a.basic(s, index.at(g.body())));
          break;
      }
      a.owner[id] = owner;
      a.moves[id] = std::move(mv);
    }
  }
  return a;
}

namespace {

// Dead ends are modelled as self-loops whose priority makes the stuck owner
// lose, so every position of the solver's graph has a successor.
class ZielonkaSolver {
 public:
  explicit ZielonkaSolver(const Arena& a) : a_(a), n_(a.size()) {
    succ_.resize(n_);
    pred_.resize(n_);
    prio_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      if (a.moves[v].empty()) {
        succ_[v] = {v};
        prio_[v] = a.owner[v] == Player::Abelard ? 0 : 1;
      } else {
        succ_[v] = a.moves[v];
        prio_[v] = a.priority[v];
      }
      for (auto w : succ_[v]) pred_[w].push_back(v);
    }
    strategy_[0].assign(n_, std::nullopt);
    strategy_[1].assign(n_, std::nullopt);
  }

  Solution run() {
    std::vector<std::size_t> all(n_);
    for (std::size_t v = 0; v < n_; ++v) all[v] = v;
    auto win = zielonka(all);
    Solution sol;
    sol.win_eloise.assign(n_, false);
    sol.win_abelard.assign(n_, false);
    for (auto v : win[0]) sol.win_eloise[v] = true;
    for (auto v : win[1]) sol.win_abelard[v] = true;
    sol.strategy_eloise.assign(n_, std::nullopt);
    sol.strategy_abelard.assign(n_, std::nullopt);
    for (std::size_t v = 0; v < n_; ++v) {
      if (a_.moves[v].empty()) continue;
      const Player p = a_.owner[v];
      if (!sol.wins(p, v)) continue;
      sol.strategy(p)[v] = strategy_[idx(p)][v];
    }
    return sol;
  }

 private:
  using Region = std::vector<std::size_t>;
  static int idx(Player p) { return p == Player::Eloise ? 0 : 1; }

  /// Attractor of `target` for player p inside `game` (a membership mask).
  Region attractor(const std::vector<char>& game, const Region& target, Player p) {
    std::vector<char> in(n_, 0);
    std::vector<std::size_t> remaining(n_, 0);
    std::deque<std::size_t> queue;
    Region out;
    for (auto v : target) {
      in[v] = 1;
      queue.push_back(v);
      out.push_back(v);
    }
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto u : pred_[v]) {
        if (!game[u] || in[u]) continue;
        if (a_.owner[u] == p) {
          in[u] = 1;
          strategy_[idx(p)][u] = v;
        } else {
          if (remaining[u] == 0) {
            for (auto w : succ_[u])
              if (game[w]) ++remaining[u];
          }
          if (--remaining[u] != 0) continue;
          in[u] = 1;
        }
        queue.push_back(u);
        out.push_back(u);
      }
    }
    return out;
  }

  std::array<Region, 2> zielonka(const Region& game) {
    std::array<Region, 2> win;
    if (game.empty()) return win;
    std::vector<char> in(n_, 0);
    unsigned d = 0;
    for (auto v : game) {
      in[v] = 1;
      d = std::max(d, prio_[v]);
    }
    const Player i = d % 2 == 0 ? Player::Eloise : Player::Abelard;
    Region top;
    for (auto v : game)
      if (prio_[v] == d) top.push_back(v);
    for (auto v : top) {
      if (a_.owner[v] != i) continue;
      for (auto w : succ_[v]) {
        if (in[w]) {
          strategy_[idx(i)][v] = w;
          break;
        }
      }
    }
    auto attr_i = attractor(in, top, i);
    auto sub1 = minus(game, attr_i);
    auto w1 = zielonka(sub1);
    if (w1[idx(opponent(i))].empty()) {
      win[idx(i)] = game;
      return win;
    }
    auto attr_o = attractor(in, w1[idx(opponent(i))], opponent(i));
    auto sub2 = minus(game, attr_o);
    auto w2 = zielonka(sub2);
    win[idx(i)] = std::move(w2[idx(i)]);
    win[idx(opponent(i))] = std::move(w2[idx(opponent(i))]);
    win[idx(opponent(i))].insert(win[idx(opponent(i))].end(), attr_o.begin(), attr_o.end());
    return win;
  }

  Region minus(const Region& game, const Region& remove) const {
    std::vector<char> drop(n_, 0);
    for (auto v : remove) drop[v] = 1;
    Region out;
    for (auto v : game)
      if (!drop[v]) out.push_back(v);
    return out;
  }

  const Arena& a_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> succ_, pred_;
  std::vector<unsigned> prio_;
  std::array<std::vector<std::optional<std::size_t>>, 2> strategy_;
};

/// Nodes lying on some cycle of the graph restricted to `keep`.
std::vector<char> on_cycle(const std::vector<std::vector<std::size_t>>& succ, const std::vector<char>& keep) {
  const auto n = succ.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0), cyclic(n, 0);
  std::vector<std::size_t> stack;
  int counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!keep[root] || index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& fr = call.back();
      const auto v = fr.v;
      if (fr.next < succ[v].size()) {
        const auto w = succ[v][fr.next++];
        if (!keep[w]) continue;
        if (w == v) cyclic[v] = 1;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        if (comp.size() > 1)
          for (auto c : comp) cyclic[c] = 1;
      }
      call.pop_back();
      if (!call.empty()) {
        auto u = call.back().v;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return cyclic;
}

}  // namespace

Solution solve(const Arena& a) { return ZielonkaSolver(a).run(); }

bool winning(const NeighborhoodModel& m, StateId s, const MuFormula& f) {
  auto a = build_arena(m, f);
  return solve(a).win_eloise[a.basic(s, 0)];
}

StateSet winning_states(const Arena& a, const Solution& sol, std::size_t formula) {
  StateSet out(a.num_states);
  for (StateId s = 0; s < a.num_states; ++s)
    if (sol.win_eloise[a.basic(s, formula)]) out.set(s);
  return out;
}

bool verify_strategy(const Arena& a, const Solution& sol, Player player) {
  const auto n = a.size();
  const auto& strat = sol.strategy(player);
  std::vector<char> region(n, 0);
  for (std::size_t v = 0; v < n; ++v) region[v] = sol.wins(player, v) ? 1 : 0;

  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!region[v]) continue;
    if (a.owner[v] == player) {
      if (a.moves[v].empty() || !strat[v]) return false;
      const auto w = *strat[v];
      if (std::find(a.moves[v].begin(), a.moves[v].end(), w) == a.moves[v].end()) return false;
      if (!region[w]) return false;
      succ[v] = {w};
    } else {
      for (auto w : a.moves[v])
        if (!region[w]) return false;
      succ[v] = a.moves[v];
    }
  }

  std::set<unsigned> bad;
  for (std::size_t v = 0; v < n; ++v)
    if (region[v] && (a.priority[v] % 2 == 0) != (player == Player::Eloise)) bad.insert(a.priority[v]);
  for (auto d : bad) {
    std::vector<char> keep(n, 0);
    for (std::size_t v = 0; v < n; ++v) keep[v] = region[v] && a.priority[v] <= d;
    auto cyc = on_cycle(succ, keep);
    for (std::size_t v = 0; v < n; ++v)
      if (keep[v] && a.priority[v] == d && cyc[v]) return false;
  }
  return true;
}

std::string dump_arena(const Arena& a, const NeighborhoodModel& m) {
  using Json = nlohmann::ordered_json;
  auto player = [](Player p) { return p == Player::Eloise ? "E" : "A"; };
  Json positions = Json::array();
  for (std::size_t v = 0; v < a.size(); ++v) {
    const auto& p = a.positions[v];
    Json j;
    j["id"] = v;
    if (p.kind == Position::Kind::Basic) {
      j["kind"] = "basic";
      j["state"] = m.states[p.state];
    } else {
      j["kind"] = "intermediate";
      j["chooser"] = player(p.chooser);
      std::vector<std::string> z;
      for (auto t : members(p.neighborhood)) z.push_back(m.states[t]);
      j["neighborhood"] = z;
    }
    j["formula"] = print_mu(a.subformulas[p.formula]);
    j["owner"] = player(a.owner[v]);
    j["priority"] = a.priority[v];
    j["moves"] = a.moves[v];
    positions.push_back(std::move(j));
  }
  Json doc;
  doc["positions"] = std::move(positions);
  return doc.dump(1);
}

}  // namespace nbmu
