#include "nbmu/syntax.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace nbmu {

Var NameSupply::fresh(const Var& base) {
  for (std::size_t k = 1;; ++k) {
    Var candidate = base + std::to_string(k);
    if (used_.insert(candidate).second) return candidate;
  }
}

namespace {

void collect_free(const MuFormula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f.kind()) {
    case MuKind::Atom:
    case MuKind::NegAtom:
      if (!bound.count(f.var())) out.insert(f.var());
      return;
    case MuKind::Mu:
    case MuKind::Nu: {
      bool added = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (added) bound.erase(f.var());
      return;
    }
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) collect_free(i == 0 ? f.left() : f.right(), bound, out);
  }
}

template <typename Fn>
void visit(const MuFormula& f, Fn&& fn) {
  fn(f);
  if (f.arity() >= 1) visit(f.left(), fn);
  if (f.arity() == 2) visit(f.right(), fn);
}

MuFormula rebuild_unary(const MuFormula& f, MuFormula arg) {
  switch (f.kind()) {
    case MuKind::Box: return MuFormula::box(std::move(arg));
    case MuKind::Dia: return MuFormula::dia(std::move(arg));
    case MuKind::GBox: return MuFormula::gbox(std::move(arg));
    case MuKind::GDia: return MuFormula::gdia(std::move(arg));
    case MuKind::Mu: return MuFormula::mu(f.var(), std::move(arg));
    case MuKind::Nu: return MuFormula::nu(f.var(), std::move(arg));
    default: throw std::logic_error("rebuild_unary: not a unary node");
  }
}

MuFormula negate_in(const MuFormula& f, std::set<Var>& bound) {
  switch (f.kind()) {
    case MuKind::Atom:
      return bound.count(f.var()) ? f : MuFormula::neg_atom(f.var());
    case MuKind::NegAtom: return MuFormula::atom(f.var());
    case MuKind::Top: return MuFormula::bot();
    case MuKind::Bot: return MuFormula::top();
    case MuKind::And: return MuFormula::disj(negate_in(f.left(), bound), negate_in(f.right(), bound));
    case MuKind::Or: return MuFormula::conj(negate_in(f.left(), bound), negate_in(f.right(), bound));
    case MuKind::Box: return MuFormula::dia(negate_in(f.arg(), bound));
    case MuKind::Dia: return MuFormula::box(negate_in(f.arg(), bound));
    case MuKind::GBox: return MuFormula::gdia(negate_in(f.arg(), bound));
    case MuKind::GDia: return MuFormula::gbox(negate_in(f.arg(), bound));
    case MuKind::Mu:
    case MuKind::Nu: {
      bool added = bound.insert(f.var()).second;
      auto body = negate_in(f.body(), bound);
      if (added) bound.erase(f.var());
      return f.kind() == MuKind::Mu ? MuFormula::nu(f.var(), std::move(body))
                                    : MuFormula::mu(f.var(), std::move(body));
    }
  }
  throw std::logic_error("negate: unknown kind");
}

struct WellNamer {
  std::set<Var> free;
  std::set<Var> binders;
  NameSupply names;

  MuFormula run(const MuFormula& f, const std::map<Var, Var>& env) {
    switch (f.kind()) {
      case MuKind::Atom:
      case MuKind::NegAtom: {
        auto it = env.find(f.var());
        if (it == env.end()) return f;
        return f.kind() == MuKind::Atom ? MuFormula::atom(it->second) : MuFormula::neg_atom(it->second);
      }
      case MuKind::Top:
      case MuKind::Bot:
        return f;
      case MuKind::And:
      case MuKind::Or: {
        // left operand first, so earlier binders keep their names
        auto l = run(f.left(), env);
        auto r = run(f.right(), env);
        return f.kind() == MuKind::And ? MuFormula::conj(std::move(l), std::move(r))
                                       : MuFormula::disj(std::move(l), std::move(r));
      }
      case MuKind::Box:
      case MuKind::Dia:
      case MuKind::GBox:
      case MuKind::GDia:
        return rebuild_unary(f, run(f.arg(), env));
      case MuKind::Mu:
      case MuKind::Nu: {
        Var name = f.var();
        if (free.count(name) || binders.count(name)) name = names.fresh(f.var());
        binders.insert(name);
        auto inner = env;
        inner[f.var()] = name;
        auto body = run(f.body(), inner);
        return f.kind() == MuKind::Mu ? MuFormula::mu(name, std::move(body))
                                      : MuFormula::nu(name, std::move(body));
      }
    }
    throw std::logic_error("well_name: unknown kind");
  }
};

void collect_subformulas(const MuFormula& f, std::set<MuFormula>& seen, std::vector<MuFormula>& out) {
  if (!seen.insert(f).second) return;
  out.push_back(f);
  if (f.arity() >= 1) collect_subformulas(f.left(), seen, out);
  if (f.arity() == 2) collect_subformulas(f.right(), seen, out);
}

MuFormula rename_in(const MuFormula& f, const Var& from, const Var& to) {
  switch (f.kind()) {
    case MuKind::Atom:
      return f.var() == from ? MuFormula::atom(to) : f;
    case MuKind::NegAtom:
      return f.var() == from ? MuFormula::neg_atom(to) : f;
    case MuKind::Top:
    case MuKind::Bot:
      return f;
    case MuKind::And: return MuFormula::conj(rename_in(f.left(), from, to), rename_in(f.right(), from, to));
    case MuKind::Or: return MuFormula::disj(rename_in(f.left(), from, to), rename_in(f.right(), from, to));
    case MuKind::Mu:
    case MuKind::Nu:
      if (f.var() == from) return f;
      [[fallthrough]];
    default:
      return rebuild_unary(f, rename_in(f.arg(), from, to));
  }
}

bool positive_in(const MuFormula& f, std::vector<Var>& bound) {
  switch (f.kind()) {
    case MuKind::NegAtom:
      return std::find(bound.begin(), bound.end(), f.var()) == bound.end();
    case MuKind::Mu:
    case MuKind::Nu: {
      bound.push_back(f.var());
      bool ok = positive_in(f.body(), bound);
      bound.pop_back();
      return ok;
    }
    default:
      for (std::size_t i = 0; i < f.arity(); ++i)
        if (!positive_in(i == 0 ? f.left() : f.right(), bound)) return false;
      return true;
  }
}

void collect_nmso_free(const NmsoFormula& f, std::multiset<Var>& bound, std::set<Var>& out) {
  auto note = [&](const Var& v) {
    if (!bound.count(v)) out.insert(v);
  };
  switch (f.kind()) {
    case NmsoKind::Sr:
    case NmsoKind::Sing:
    case NmsoKind::Empty:
      note(f.var());
      return;
    case NmsoKind::Sub:
    case NmsoKind::BoxRel:
    case NmsoKind::Eqv:
      note(f.var());
      note(f.var2());
      return;
    case NmsoKind::Exists:
    case NmsoKind::Forall: {
      auto it = bound.insert(f.var());
      collect_nmso_free(f.body(), bound, out);
      bound.erase(it);
      return;
    }
    default:
      for (std::size_t i = 0; i < f.arity(); ++i)
        collect_nmso_free(i == 0 ? f.left() : f.right(), bound, out);
  }
}

void collect_nmso_all(const NmsoFormula& f, std::set<Var>& out) {
  if (!f.var().empty()) out.insert(f.var());
  if (!f.var2().empty()) out.insert(f.var2());
  for (std::size_t i = 0; i < f.arity(); ++i) collect_nmso_all(i == 0 ? f.left() : f.right(), out);
}

struct Desugarer {
  NameSupply names;

  NmsoFormula run(const NmsoFormula& f) {
    using N = NmsoFormula;
    switch (f.kind()) {
      case NmsoKind::Sr:
      case NmsoKind::Sub:
      case NmsoKind::BoxRel:
        return f;
      case NmsoKind::Not: return N::negation(run(f.body()));
      case NmsoKind::Exists: return N::exists(f.var(), run(f.body()));
      case NmsoKind::And:
      case NmsoKind::Or:
      case NmsoKind::Implies:
      case NmsoKind::Iff: {
        auto a = run(f.left());
        auto b = run(f.right());
        switch (f.kind()) {
          case NmsoKind::And: return N::conj(a, b);
          case NmsoKind::Or: return N::disj(a, b);
          case NmsoKind::Implies: return N::disj(N::negation(a), b);
          default: return N::conj(N::disj(N::negation(a), b), N::disj(N::negation(b), a));
        }
      }
      case NmsoKind::Forall: return N::negation(N::exists(f.var(), N::negation(run(f.body()))));
      case NmsoKind::Empty: {
        Var w = names.fresh(f.var());
        return run(N::forall(w, N::sub(f.var(), w)));
      }
      case NmsoKind::Eqv: return N::conj(N::sub(f.var(), f.var2()), N::sub(f.var2(), f.var()));
      case NmsoKind::Sing: {
        const Var& v = f.var();
        Var w = names.fresh(v);
        auto sub_is_trivial =
            N::forall(w, N::implies(N::sub(w, v), N::disj(N::empty(w), N::eqv(w, v))));
        return run(N::conj(N::negation(N::empty(v)), sub_is_trivial));
      }
    }
    throw std::logic_error("desugar: unknown kind");
  }
};

std::size_t qdepth(const NmsoFormula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) d = std::max(d, qdepth(i == 0 ? f.left() : f.right()));
  return f.is_quantifier() ? d + 1 : d;
}

}  // namespace

std::set<Var> free_vars(const MuFormula& f) {
  std::set<Var> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<Var> bound_vars(const MuFormula& f) {
  std::set<Var> out;
  visit(f, [&](const MuFormula& g) {
    if (g.is_binder()) out.insert(g.var());
  });
  return out;
}

std::set<Var> all_vars(const MuFormula& f) {
  std::set<Var> out;
  visit(f, [&](const MuFormula& g) {
    if (!g.var().empty()) out.insert(g.var());
  });
  return out;
}

MuFormula negate(const MuFormula& f) {
  std::set<Var> bound;
  return negate_in(f, bound);
}

bool is_well_named(const MuFormula& f) {
  std::map<Var, int> binder_count;
  visit(f, [&](const MuFormula& g) {
    if (g.is_binder()) ++binder_count[g.var()];
  });
  auto free = free_vars(f);
  for (const auto& [v, n] : binder_count)
    if (n != 1 || free.count(v)) return false;
  return true;
}

MuFormula well_name(const MuFormula& f) {
  WellNamer w{free_vars(f), {}, NameSupply(all_vars(f))};
  return w.run(f, {});
}

std::vector<MuFormula> subformulas(const MuFormula& f) {
  std::set<MuFormula> seen;
  std::vector<MuFormula> out;
  collect_subformulas(f, seen, out);
  return out;
}

MuFormula binding_definition(const MuFormula& f, const Var& p) {
  std::optional<MuFormula> found;
  visit(f, [&](const MuFormula& g) {
    if (!found && g.is_binder() && g.var() == p) found = g.body();
  });
  if (!found) throw std::invalid_argument("variable '" + p + "' is not bound");
  return *found;
}

RankOrder rank_order(const MuFormula& f) {
  std::map<Var, Binder> kinds;
  std::map<Var, MuFormula> defs;
  visit(f, [&](const MuFormula& g) {
    if (g.is_binder() && !kinds.count(g.var())) {
      kinds[g.var()] = g.kind() == MuKind::Mu ? Binder::Least : Binder::Greatest;
      defs.emplace(g.var(), g.body());
    }
  });
  // higher[q] = variables ranking higher than q, i.e. free in D(q).
  std::map<Var, std::set<Var>> higher;
  std::map<Var, int> indegree;
  for (const auto& [q, _] : kinds) indegree[q] = 0;
  for (const auto& [q, def] : defs) {
    for (const auto& p : free_vars(def)) {
      if (kinds.count(p) && p != q && higher[q].insert(p).second) ++indegree[p];
    }
  }
  std::set<Var> ready;
  for (const auto& [v, d] : indegree)
    if (d == 0) ready.insert(v);
  RankOrder out;
  while (!ready.empty()) {
    Var v = *ready.begin();
    ready.erase(ready.begin());
    out.push_back({v, kinds[v]});
    for (const auto& p : higher[v])
      if (--indegree[p] == 0) ready.insert(p);
  }
  if (out.size() != kinds.size()) throw std::logic_error("rank_order: cyclic ranks-higher relation");
  return out;
}

MuFormula substitute(const MuFormula& f, const Var& old_var, const Var& new_var) {
  if (all_vars(f).count(new_var))
    throw std::invalid_argument("substitute: '" + new_var + "' already occurs in the formula");
  return rename_in(f, old_var, new_var);
}

MuFormula rename_free(const MuFormula& f, const Var& old_var, const Var& new_var) {
  if (bound_vars(f).count(new_var))
    throw std::invalid_argument("rename_free: '" + new_var + "' would be captured");
  return rename_in(f, old_var, new_var);
}

bool is_global_free(const MuFormula& f) {
  bool ok = true;
  visit(f, [&](const MuFormula& g) {
    if (g.kind() == MuKind::GBox || g.kind() == MuKind::GDia) ok = false;
  });
  return ok;
}

bool is_positive(const MuFormula& f) {
  std::vector<Var> bound;
  return positive_in(f, bound);
}

std::set<Var> free_vars(const NmsoFormula& f) {
  std::multiset<Var> bound;
  std::set<Var> out;
  collect_nmso_free(f, bound, out);
  return out;
}

std::set<Var> all_vars(const NmsoFormula& f) {
  std::set<Var> out;
  collect_nmso_all(f, out);
  return out;
}

std::size_t quantifier_depth(const NmsoFormula& f) { return qdepth(f); }

NmsoFormula desugar_nmso(const NmsoFormula& f) {
  Desugarer d{NameSupply(all_vars(f))};
  return d.run(f);
}

}  // namespace nbmu
