#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbmu/model.hpp"

namespace nbmu {

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// 0 selects the suite's default.
  std::size_t samples = 0;
  /// Universe bound for the suites that build one; 0 selects the default (1).
  std::size_t universe = 0;
  /// Lift the universe guard.
  bool force = false;
};

/// One refuted sample, replayable from its seed.
struct Failure {
  std::uint64_t seed = 0;
  std::optional<NeighborhoodModel> model;
  /// Second model for checks over pairs of models.
  std::optional<NeighborhoodModel> other;
  std::string formula;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::size_t samples = 0;
  std::vector<Failure> failures;

  bool passed() const { return failures.empty(); }
  /// {"suite":...,"samples":n,"failures":[{"seed":..,"model":..,"formula":..,...}]}
  std::string to_json() const;
};

/// union-closure, adequacy, determinacy, invariance, global-invariance,
/// kripke-roundtrip, generator-oracle, eq-translation, binddef, usim,
/// main-lemma, fixpoints.
const std::vector<std::string>& suite_names();

/// Runs a named suite. Samples are independent and derive their seeds from
/// (options.seed, sample index). Throws std::invalid_argument for an unknown
/// suite and GuardError for a universe bound past the guard.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace nbmu
