#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbmu/formula.hpp"
#include "nbmu/model.hpp"

namespace nbmu {

/// NMSO formula true exactly when the value of p is the extension of f.
/// Requires f global-free with every bound variable positive; p must not
/// occur in f. Throws std::invalid_argument otherwise.
NmsoFormula eq_formula(const MuFormula& f, const Var& p);

/// exists p. exists q. (sr(q) & q <= p & Eq(f, p)), with p and q fresh.
NmsoFormula to_nmso(const MuFormula& f);

/// Disjoint union of every model with 1..max_states states over vocab, so
/// that each small pointed model is bisimilar to one of its points.
struct UniverseModel {
  NeighborhoodModel model;
  std::size_t max_states = 0;
  std::set<Var> vocab;
};

struct UniverseGuard {
  std::size_t max_states = 2;
  std::size_t max_vocab = 1;
};

UniverseModel build_universe(std::size_t max_states, const std::set<Var>& vocab, UniverseGuard guard = {});

/// Model document with an extra "provenance" key: {"max_states":k,"vocab":[...]}.
std::string write_universe(const UniverseModel& u);
UniverseModel read_universe(std::string_view text);

/// Result of replacing global modalities against a universe model.
struct TranslationTable {
  /// Translation of every subformula of the (well-named) input.
  std::map<MuFormula, MuFormula> translation;
  /// Universe states u with (u, psi) won by Eloise in the game for the whole input.
  std::map<MuFormula, StateSet> winning;
};

/// Homomorphic except on global modalities: [A]psi becomes true if Eloise
/// wins (u, psi) at every universe state u and false otherwise; [E]psi
/// becomes true if she wins at some u. Requires f well-named.
std::pair<MuFormula, TranslationTable> eliminate_global(const MuFormula& f, const UniverseModel& u);

struct LemmaReport {
  MuFormula translated;
  std::size_t agreements = 0;
  /// States of the checked model where the two sides differ.
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// For every state s of m, compares s |= t(f) in m with s |= f in the
/// disjoint union of the universe and m. Throws std::invalid_argument when m
/// is larger than the universe's bound or its vocabulary differs.
LemmaReport main_lemma_check(const MuFormula& f, const NeighborhoodModel& m, const UniverseModel& u);
/// Same check with a precomputed translation.
LemmaReport main_lemma_check(const MuFormula& f, const MuFormula& translated, const NeighborhoodModel& m,
                             const UniverseModel& u);

struct ProbeSpec {
  /// Pair up all one-state models exhaustively before random sampling.
  bool exhaustive_small = true;
  std::size_t random_samples = 100;
  std::size_t max_states = 3;
};

/// A bisimilar pair of pointed models on which a formula disagrees.
struct Counterexample {
  NeighborhoodModel left;
  NeighborhoodModel right;
  std::string construction;
};

struct ProbeReport {
  std::size_t pairs_checked = 0;
  std::vector<Counterexample> counterexamples;
  /// Agreement on every sample is evidence of invariance, not a proof.
  std::string summary() const;
};

/// Evaluates f on pairs of pointed models that are bisimilar by
/// construction (disjoint-union insertions and duplicated states) and
/// collects the pairs where its truth value differs.
ProbeReport invariance_probe(const MuFormula& f, const ProbeSpec& spec, std::uint64_t seed);

}  // namespace nbmu
