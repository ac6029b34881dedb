#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// deliberately avoid the library's evaluators: they work on explicit
// neighborhood families and enumerate every subset.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nbmu/formula.hpp"
#include "nbmu/model.hpp"

namespace testing {

using nbmu::MuFormula;
using nbmu::MuKind;
using nbmu::NeighborhoodModel;
using nbmu::StateSet;

/// states {s0,s1}; s0 has the single neighborhood generator {s1}; s1 has
/// none; p holds at s1.
inline NeighborhoodModel m1() {
  NeighborhoodModel m;
  m.states = {"s0", "s1"};
  m.gens = {{nbmu::singleton(2, 1)}, {}};
  m.valuation["p"] = nbmu::singleton(2, 1);
  return m;
}

inline StateSet set_of(std::size_t n, std::initializer_list<std::size_t> xs) {
  StateSet z(n);
  for (auto x : xs) z.set(x);
  return z;
}

inline std::vector<StateSet> all_subsets(std::size_t n) {
  std::vector<StateSet> out;
  for (unsigned long bits = 0; bits < (1UL << n); ++bits) out.emplace_back(n, bits);
  return out;
}

/// Explicit neighborhood families, built from membership tests of all subsets
/// against the generators.
inline std::vector<std::set<unsigned long>> explicit_families(const NeighborhoodModel& m) {
  std::vector<std::set<unsigned long>> out(m.size());
  for (std::size_t s = 0; s < m.size(); ++s)
    for (const auto& z : all_subsets(m.size()))
      for (const auto& g : m.gens[s])
        if (g.is_subset_of(z)) {
          out[s].insert(z.to_ulong());
          break;
        }
  return out;
}

/// Denotational oracle. Fixpoints are taken as the intersection of all
/// pre-fixpoints (mu) or the union of all post-fixpoints (nu), enumerating
/// every subset, rather than by iteration.
class OracleEval {
 public:
  explicit OracleEval(const NeighborhoodModel& m) : m_(m), n_(m.size()), fam_(explicit_families(m)) {}

  StateSet eval(const MuFormula& f, std::map<std::string, StateSet> env = {}) const {
    switch (f.kind()) {
      case MuKind::Atom: return lookup(f.var(), env);
      case MuKind::NegAtom: return ~lookup(f.var(), env);
      case MuKind::Top: return StateSet(n_).set();
      case MuKind::Bot: return StateSet(n_);
      case MuKind::And: return eval(f.left(), env) & eval(f.right(), env);
      case MuKind::Or: return eval(f.left(), env) | eval(f.right(), env);
      case MuKind::Box: {
        const auto z = eval(f.arg(), env).to_ulong();
        StateSet out(n_);
        for (std::size_t s = 0; s < n_; ++s) out[s] = fam_[s].count(z) > 0;
        return out;
      }
      case MuKind::Dia: {
        const auto z = (~eval(f.arg(), env)).to_ulong();
        StateSet out(n_);
        for (std::size_t s = 0; s < n_; ++s) out[s] = fam_[s].count(z) == 0;
        return out;
      }
      case MuKind::GBox: return eval(f.arg(), env).all() ? StateSet(n_).set() : StateSet(n_);
      case MuKind::GDia: return eval(f.arg(), env).any() ? StateSet(n_).set() : StateSet(n_);
      case MuKind::Mu: {
        StateSet acc(n_);
        acc.set();
        for (const auto& z : all_subsets(n_)) {
          env[f.var()] = z;
          if (eval(f.body(), env).is_subset_of(z)) acc &= z;
        }
        return acc;
      }
      case MuKind::Nu: {
        StateSet acc(n_);
        for (const auto& z : all_subsets(n_)) {
          env[f.var()] = z;
          if (z.is_subset_of(eval(f.body(), env))) acc |= z;
        }
        return acc;
      }
    }
    return StateSet(n_);
  }

 private:
  StateSet lookup(const std::string& v, const std::map<std::string, StateSet>& env) const {
    if (auto it = env.find(v); it != env.end()) return it->second;
    return m_.valuation.at(v);
  }

  const NeighborhoodModel& m_;
  std::size_t n_;
  std::vector<std::set<unsigned long>> fam_;
};

}  // namespace testing
