#pragma once

#include <cstdint>
#include <random>
#include <set>

#include "nbmu/formula.hpp"

namespace nbmu {

struct FormulaParams {
  /// Leaves have depth 1.
  std::size_t max_depth = 4;
  std::set<Var> vocab = {"p"};
  bool global = false;
  bool fixpoints = true;
  /// Chance of stopping early with a leaf above the depth bound.
  double leaf_bias = 0.2;
  /// Force a mu or nu binder at the root (when max_depth > 1).
  bool binder_root = false;
};

/// Random well-named formula in which bound variables occur only positively.
/// Binder names are fresh against vocab ("x1", "x2", ...).
MuFormula random_formula(const FormulaParams& params, std::mt19937_64& rng);
MuFormula random_formula(const FormulaParams& params, std::uint64_t seed);

/// Deterministic per-sample seed derived from a run seed and a sample index.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace nbmu
