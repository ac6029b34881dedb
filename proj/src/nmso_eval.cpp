#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "nbmu/denotation.hpp"
#include "nbmu/errors.hpp"
#include "nbmu/syntax.hpp"

namespace nbmu {

namespace {

using Mask = std::uint64_t;

// The formula is compiled to a node table over integer variable slots. Every
// node's truth value depends only on the values of its free quantified
// variables, so results are cached per node under those values. This keeps
// the search exhaustive while avoiding re-evaluating identical subproblems.
class NmsoEvaluator {
 public:
  NmsoEvaluator(const PointedModel& pm, const NmsoFormula& f, const Environment& env)
      : n_(pm.model.size()), point_(Mask{1} << pm.point) {
    for (StateId t = 0; t < n_; ++t) {
      std::vector<Mask> gs;
      for (const auto& g : pm.model.gens[t]) gs.push_back(g.to_ulong());
      gens_.push_back(std::move(gs));
    }
    for (Mask z = 0; z < (Mask{1} << n_); ++z) order_.push_back(z);
    // Increasing size, then lexicographic on the sorted member list.
    std::sort(order_.begin(), order_.end(), [](Mask a, Mask b) {
      int ca = std::popcount(a), cb = std::popcount(b);
      if (ca != cb) return ca < cb;
      while (a != 0 && b != 0) {
        int la = std::countr_zero(a), lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
      }
      return a == 0 && b != 0;
    });

    root_ = compile(f);
    for (std::size_t s = 0; s < slot_names_.size(); ++s) {
      const auto& name = slot_names_[s];
      if (auto it = env.find(name); it != env.end()) {
        values_[s] = it->second.to_ulong();
      } else if (auto jt = pm.model.valuation.find(name); jt != pm.model.valuation.end()) {
        values_[s] = jt->second.to_ulong();
      }
    }
    for (const auto& name : free_vars(f)) {
      if (!env.count(name) && !pm.model.valuation.count(name))
        throw std::invalid_argument("variable '" + name + "' is not in the model's vocabulary");
    }
    for (auto& node : nodes_) {
      std::vector<int> key_slots;
      for (int s : node.free)
        if (quantified_.count(s)) key_slots.push_back(s);
      node.memo = key_slots.size() * n_ <= 64;
      node.key_slots = std::move(key_slots);
    }
  }

  bool run() { return eval(root_); }

 private:
  struct Node {
    NmsoKind kind;
    int a = -1, b = -1;
    int l = -1, r = -1;
    std::set<int> free;
    std::vector<int> key_slots;
    bool memo = false;
    std::unordered_map<Mask, bool> cache;
  };

  int slot(const Var& v) {
    auto [it, inserted] = slots_.emplace(v, static_cast<int>(slot_names_.size()));
    if (inserted) {
      slot_names_.push_back(v);
      values_.push_back(0);
    }
    return it->second;
  }

  int compile(const NmsoFormula& f) {
    Node node;
    node.kind = f.kind();
    if (!f.var().empty()) node.a = slot(f.var());
    if (!f.var2().empty()) node.b = slot(f.var2());
    if (f.arity() >= 1) node.l = compile(f.left());
    if (f.arity() == 2) node.r = compile(f.right());
    if (f.is_atomic()) {
      node.free.insert(node.a);
      if (node.b >= 0) node.free.insert(node.b);
    } else {
      node.free = nodes_[node.l].free;
      if (node.r >= 0) node.free.insert(nodes_[node.r].free.begin(), nodes_[node.r].free.end());
      if (f.is_quantifier()) {
        node.free.erase(node.a);
        quantified_.insert(node.a);
      }
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  bool has_neighborhood(StateId t, Mask z) const {
    return std::any_of(gens_[t].begin(), gens_[t].end(), [&](Mask g) { return (g & ~z) == 0; });
  }

  bool eval(int id) {
    Node& node = nodes_[id];
    Mask key = 0;
    if (node.memo && !node.key_slots.empty()) {
      for (int s : node.key_slots) key = (key << n_) | values_[s];
      if (auto it = node.cache.find(key); it != node.cache.end()) return it->second;
    }
    bool result = compute(node);
    if (node.memo && !node.key_slots.empty()) nodes_[id].cache.emplace(key, result);
    return result;
  }

  bool compute(const Node& node) {
    const Mask va = node.a >= 0 ? values_[node.a] : 0;
    const Mask vb = node.b >= 0 ? values_[node.b] : 0;
    switch (node.kind) {
      case NmsoKind::Sr: return va == point_;
      case NmsoKind::Sub: return (va & ~vb) == 0;
      case NmsoKind::BoxRel:
        for (Mask rest = va; rest != 0; rest &= rest - 1)
          if (!has_neighborhood(static_cast<StateId>(std::countr_zero(rest)), vb)) return false;
        return true;
      case NmsoKind::Sing: return std::popcount(va) == 1;
      case NmsoKind::Empty: return va == 0;
      case NmsoKind::Eqv: return va == vb;
      case NmsoKind::Not: return !eval(node.l);
      case NmsoKind::And: return eval(node.l) && eval(node.r);
      case NmsoKind::Or: return eval(node.l) || eval(node.r);
      case NmsoKind::Implies: return !eval(node.l) || eval(node.r);
      case NmsoKind::Iff: return eval(node.l) == eval(node.r);
      case NmsoKind::Exists:
      case NmsoKind::Forall: {
        const bool want = node.kind == NmsoKind::Exists;
        const Mask saved = values_[node.a];
        bool result = !want;
        for (Mask z : order_) {
          values_[node.a] = z;
          if (eval(node.l) == want) {
            result = want;
            break;
          }
        }
        values_[node.a] = saved;
        return result;
      }
    }
    throw std::logic_error("eval_nmso: unknown kind");
  }

  std::size_t n_;
  Mask point_;
  std::vector<std::vector<Mask>> gens_;
  std::vector<Mask> order_;
  std::map<Var, int> slots_;
  std::vector<Var> slot_names_;
  std::vector<Mask> values_;
  std::set<int> quantified_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace

bool eval_nmso(const PointedModel& pm, const NmsoFormula& f, const Environment& env, NmsoLimits limits) {
  const auto n = pm.model.size();
  if (n > limits.max_states || n >= 32)
    throw GuardError("eval_nmso: " + std::to_string(n) + " states exceeds the limit of " +
                     std::to_string(limits.max_states));
  if (auto d = quantifier_depth(f); d > limits.max_quantifier_depth)
    throw GuardError("eval_nmso: quantifier depth " + std::to_string(d) + " exceeds the limit of " +
                     std::to_string(limits.max_quantifier_depth));
  if (pm.point >= n) throw std::invalid_argument("eval_nmso: point is not a state");
  for (const auto& [v, z] : env)
    if (z.size() != n) throw std::invalid_argument("binding for '" + v + "' has the wrong size");
  return NmsoEvaluator(pm, f, env).run();
}

}  // namespace nbmu
