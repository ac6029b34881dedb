#pragma once

#include <map>
#include <vector>

#include "nbmu/formula.hpp"
#include "nbmu/model.hpp"

namespace nbmu {

/// Extension of a formula: the set of states where it holds.
using Extension = StateSet;

/// Values for variables, taking precedence over the model's valuation.
using Environment = std::map<Var, StateSet>;

/// Denotational semantics. Fixpoints are computed by iteration from the
/// bottom (mu) or top (nu) of the lattice until stable. Throws
/// std::invalid_argument if a free variable has no value.
Extension eval_mu(const NeighborhoodModel& m, const MuFormula& f);
Extension eval_mu(const NeighborhoodModel& m, const MuFormula& f, const Environment& env);

/// Approximation chain X(k+1) = body[v := Xk] of a fixpoint formula, from
/// X0 = {} for mu and X0 = all states for nu, ending at the first repeated
/// value or after `limit` steps.
std::vector<Extension> approximants(const NeighborhoodModel& m, const MuFormula& f, std::size_t limit,
                                    const Environment& env = {});

struct NmsoLimits {
  std::size_t max_states = 12;
  std::size_t max_quantifier_depth = 8;
};

/// Brute-force truth of an NMSO formula at a pointed model; quantifiers range
/// over all subsets of the states. Sugar is evaluated directly. Throws
/// GuardError beyond the limits and std::invalid_argument for unknown free
/// variables.
bool eval_nmso(const PointedModel& pm, const NmsoFormula& f, const Environment& env = {},
               NmsoLimits limits = {});

}  // namespace nbmu
