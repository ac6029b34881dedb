#include "nbmu/denotation.hpp"

#include <stdexcept>

#include "nbmu/syntax.hpp"

namespace nbmu {

namespace {

class Evaluator {
 public:
  Evaluator(const NeighborhoodModel& m, Environment env) : m_(m), env_(std::move(env)) {}

  Extension eval(const MuFormula& f) {
    const auto n = m_.size();
    switch (f.kind()) {
      case MuKind::Atom: return lookup(f.var());
      case MuKind::NegAtom: return ~lookup(f.var());
      case MuKind::Top: return full_set(n);
      case MuKind::Bot: return empty_set(n);
      case MuKind::And: return eval(f.left()) & eval(f.right());
      case MuKind::Or: return eval(f.left()) | eval(f.right());
      case MuKind::Box: {
        auto x = eval(f.arg());
        Extension out(n);
        for (StateId u = 0; u < n; ++u)
          if (contains_neighborhood(m_, u, x)) out.set(u);
        return out;
      }
      case MuKind::Dia: {
        auto co = ~eval(f.arg());
        Extension out(n);
        for (StateId u = 0; u < n; ++u)
          if (!contains_neighborhood(m_, u, co)) out.set(u);
        return out;
      }
      case MuKind::GBox: return eval(f.arg()).all() ? full_set(n) : empty_set(n);
      case MuKind::GDia: return eval(f.arg()).any() ? full_set(n) : empty_set(n);
      case MuKind::Mu: return fixpoint(f, empty_set(n));
      case MuKind::Nu: return fixpoint(f, full_set(n));
    }
    throw std::logic_error("eval_mu: unknown kind");
  }

  /// Iterates the body of a binder from `start` until stable.
  Extension fixpoint(const MuFormula& f, Extension start) {
    Extension x = std::move(start);
    for (;;) {
      auto next = with_binding(f.var(), x, [&] { return eval(f.body()); });
      if (next == x) return x;
      x = std::move(next);
    }
  }

  template <typename Fn>
  Extension with_binding(const Var& v, const Extension& value, Fn&& fn) {
    auto it = env_.find(v);
    std::optional<Extension> saved;
    if (it != env_.end()) saved = it->second;
    env_[v] = value;
    auto out = fn();
    if (saved)
      env_[v] = *saved;
    else
      env_.erase(v);
    return out;
  }

 private:
  const Extension& lookup(const Var& v) const {
    if (auto it = env_.find(v); it != env_.end()) return it->second;
    if (auto it = m_.valuation.find(v); it != m_.valuation.end()) return it->second;
    throw std::invalid_argument("variable '" + v + "' is not in the model's vocabulary");
  }

  const NeighborhoodModel& m_;
  Environment env_;
};

void check_env(const NeighborhoodModel& m, const Environment& env) {
  for (const auto& [v, z] : env)
    if (z.size() != m.size()) throw std::invalid_argument("binding for '" + v + "' has the wrong size");
}

void check_free(const NeighborhoodModel& m, const MuFormula& f, const Environment& env) {
  for (const auto& v : free_vars(f))
    if (!env.count(v) && !m.valuation.count(v))
      throw std::invalid_argument("variable '" + v + "' is not in the model's vocabulary");
}

}  // namespace

Extension eval_mu(const NeighborhoodModel& m, const MuFormula& f) { return eval_mu(m, f, {}); }

Extension eval_mu(const NeighborhoodModel& m, const MuFormula& f, const Environment& env) {
  check_env(m, env);
  check_free(m, f, env);
  return Evaluator(m, env).eval(f);
}

std::vector<Extension> approximants(const NeighborhoodModel& m, const MuFormula& f, std::size_t limit,
                                    const Environment& env) {
  if (!f.is_binder()) throw std::invalid_argument("approximants: not a fixpoint formula");
  check_env(m, env);
  check_free(m, f, env);
  Evaluator ev(m, env);
  std::vector<Extension> chain{f.kind() == MuKind::Mu ? empty_set(m.size()) : full_set(m.size())};
  for (std::size_t k = 0; k < limit; ++k) {
    auto next = ev.with_binding(f.var(), chain.back(), [&] { return ev.eval(f.body()); });
    if (next == chain.back()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

}  // namespace nbmu
