#pragma once

#include <set>
#include <string>
#include <vector>

#include "nbmu/formula.hpp"

namespace nbmu {

enum class Binder { Least, Greatest };

struct RankedVar {
  Var name;
  Binder kind;
  friend bool operator==(const RankedVar&, const RankedVar&) = default;
};

/// Bound variables, lowest rank first: a variable that occurs free in the
/// binding definition of another comes after it.
using RankOrder = std::vector<RankedVar>;

/// Hands out names not yet in use, by appending the smallest positive integer
/// suffix ("p" -> "p1", then "p2", ...).
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<Var> used) : used_(std::move(used)) {}

  Var fresh(const Var& base);
  void reserve(const Var& v) { used_.insert(v); }
  bool in_use(const Var& v) const { return used_.count(v) != 0; }

 private:
  std::set<Var> used_;
};

std::set<Var> free_vars(const MuFormula& f);
std::set<Var> bound_vars(const MuFormula& f);
/// Every variable name occurring anywhere, free, bound or as a binder.
std::set<Var> all_vars(const MuFormula& f);

/// Negation-normal-form dual. Requires f well-named.
MuFormula negate(const MuFormula& f);

bool is_well_named(const MuFormula& f);
/// Renames binders so each bound variable has a unique binder and no
/// variable is both bound and free.
MuFormula well_name(const MuFormula& f);

/// Distinct subformulas in pre-order of first occurrence; f comes first.
std::vector<MuFormula> subformulas(const MuFormula& f);

/// Body of the unique binder of p. Throws std::invalid_argument when p is not bound.
MuFormula binding_definition(const MuFormula& f, const Var& p);

/// Throws std::logic_error if the ranks-higher relation has a cycle.
RankOrder rank_order(const MuFormula& f);

/// Replaces free occurrences of old_var. Throws std::invalid_argument if
/// new_var already occurs in f.
MuFormula substitute(const MuFormula& f, const Var& old_var, const Var& new_var);
/// As substitute, but only requires that new_var is not bound in f, so the
/// result may identify two free variables.
MuFormula rename_free(const MuFormula& f, const Var& old_var, const Var& new_var);

bool is_global_free(const MuFormula& f);

/// True when no bound variable occurs negated inside its binder.
bool is_positive(const MuFormula& f);

std::set<Var> free_vars(const NmsoFormula& f);
std::set<Var> all_vars(const NmsoFormula& f);
/// Maximum nesting of exists/forall.
std::size_t quantifier_depth(const NmsoFormula& f);

/// Rewrites sugar (->, <->, forall, sing, empty, eqv) into sr, <=, box, ~, &, |, exists.
NmsoFormula desugar_nmso(const NmsoFormula& f);

}  // namespace nbmu
