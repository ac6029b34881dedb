#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "nbmu/formula.hpp"

namespace nbmu {

using StateSet = boost::dynamic_bitset<>;
using StateId = std::size_t;

StateSet empty_set(std::size_t n);
StateSet full_set(std::size_t n);
StateSet singleton(std::size_t n, StateId s);
std::vector<StateId> members(const StateSet& z);

/// Finite monotone neighborhood model. Each state carries the antichain of
/// its minimal neighborhoods ("generators"); Z is a neighborhood of s iff
/// some generator of s is a subset of Z.
///
/// A generator equal to the empty set makes every subset a neighborhood; an
/// empty generator list means the state has no neighborhoods at all.
struct NeighborhoodModel {
  std::vector<std::string> states;
  std::vector<std::vector<StateSet>> gens;
  /// Keys form the vocabulary.
  std::map<Var, StateSet> valuation;
  std::optional<StateId> point;

  std::size_t size() const { return states.size(); }
  std::set<Var> vocabulary() const;
  std::optional<StateId> find_state(const std::string& name) const;
  StateId state_id(const std::string& name) const;
  StateSet all() const { return full_set(size()); }
  StateSet none() const { return empty_set(size()); }

  /// Equality up to the order in which states are listed.
  friend bool operator==(const NeighborhoodModel& a, const NeighborhoodModel& b);
};

struct PointedModel {
  const NeighborhoodModel& model;
  StateId point;
};

struct KripkeModel {
  std::vector<std::string> states;
  /// successors[u] = R[u]
  std::vector<StateSet> successors;
  std::map<Var, StateSet> valuation;

  std::size_t size() const { return states.size(); }
  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

/// Where the states of one summand landed in a disjoint union.
struct InsertionMap {
  std::size_t source;
  std::vector<StateId> image;
};

/// Each entry describes one broken invariant; empty means valid.
std::vector<std::string> validate(const NeighborhoodModel& m);
/// Throws ValidationError when validate reports anything.
void require_valid(const NeighborhoodModel& m);

bool contains_neighborhood(const NeighborhoodModel& m, StateId s, const StateSet& z);

/// Explicit family of all neighborhoods of s. Throws GuardError above
/// max_states states.
std::vector<StateSet> upward_closure(const NeighborhoodModel& m, StateId s, std::size_t max_states = 12);

/// Keeps only the subset-minimal sets, deduplicated and sorted.
std::vector<StateSet> minimal_sets(std::vector<StateSet> sets);

/// Union state names are "<name>#<index of summand>".
std::pair<NeighborhoodModel, std::vector<InsertionMap>> disjoint_union(
    const std::vector<NeighborhoodModel>& ms);

NeighborhoodModel from_kripke(const KripkeModel& k);
/// Successors are the intersection of all generators; a state with no
/// neighborhoods gets every state as successor.
KripkeModel to_kripke(const NeighborhoodModel& m);

/// Every generator antichain over n elements (all antichains of the
/// powerset lattice), in a fixed order.
std::vector<std::vector<StateSet>> antichains(std::size_t n);

struct EnumerationGuard {
  std::size_t max_states = 3;
  std::size_t max_vocab = 2;
};

/// Calls visit once per model on states s0..s{n-1}: one model per choice of
/// generator antichain for each state and valuation of vocab. Stops early if
/// visit returns false. Throws GuardError past the guard.
void enumerate_models(std::size_t n_states, const std::set<Var>& vocab,
                      const std::function<bool(const NeighborhoodModel&)>& visit,
                      EnumerationGuard guard = {});
std::vector<NeighborhoodModel> all_models(std::size_t n_states, const std::set<Var>& vocab,
                                          EnumerationGuard guard = {});

struct RandomModelParams {
  /// Probability that each candidate generator is kept.
  double neighborhood_density = 0.5;
  /// Candidate generators drawn per state.
  std::size_t candidates = 3;
  /// Probability that a state belongs to a candidate generator.
  double element_density = 0.4;
  /// Probability that a state satisfies a proposition.
  double valuation_density = 0.5;
};

NeighborhoodModel random_model(std::size_t n_states, const std::set<Var>& vocab,
                               const RandomModelParams& params, std::uint64_t seed);

KripkeModel random_kripke(std::size_t n_states, const std::set<Var>& vocab, double edge_density,
                          std::uint64_t seed);

/// Canonical state names s0..s{n-1}.
std::vector<std::string> canonical_names(std::size_t n);

}  // namespace nbmu
