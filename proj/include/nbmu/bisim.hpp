#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nbmu/game.hpp"
#include "nbmu/model.hpp"

namespace nbmu {

/// A set of pairs between the states of a left and a right model, stored
/// as one row of right-hand states per left-hand state.
class Relation {
 public:
  Relation(std::size_t left_size, std::size_t right_size)
      : right_size_(right_size), rows_(left_size, StateSet(right_size)) {}

  void add(StateId l, StateId r) { rows_.at(l).set(r); }
  void remove(StateId l, StateId r) { rows_.at(l).reset(r); }
  bool contains(StateId l, StateId r) const { return rows_.at(l).test(r); }
  const StateSet& row(StateId l) const { return rows_.at(l); }

  std::size_t left_size() const { return rows_.size(); }
  std::size_t right_size() const { return right_size_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::pair<StateId, StateId>> pairs() const;

  /// Relational image of a set of left states.
  StateSet image(const StateSet& left) const;
  /// Left states related to some member of a set of right states.
  StateSet preimage(const StateSet& right) const;

  /// Every left state and every right state occurs in some pair.
  bool full() const;

  Relation& operator|=(const Relation& other);
  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t right_size_;
  std::vector<StateSet> rows_;
};

/// Both clauses of neighborhood bisimilarity plus agreement on every
/// proposition. Throws std::invalid_argument on a vocabulary mismatch.
bool is_bisimulation(const NeighborhoodModel& left, const NeighborhoodModel& right, const Relation& r,
                     NeighborhoodMode mode = NeighborhoodMode::Generators);

/// Largest bisimulation, by deleting violating pairs from the set of
/// propositionally agreeing pairs until nothing changes.
Relation greatest_bisimulation(const NeighborhoodModel& left, const NeighborhoodModel& right,
                               NeighborhoodMode mode = NeighborhoodMode::Generators);

bool bisimilar(const NeighborhoodModel& left, StateId l, const NeighborhoodModel& right, StateId r);
bool globally_bisimilar(const NeighborhoodModel& left, StateId l, const NeighborhoodModel& right, StateId r);

/// Graph of an insertion map, as a relation from the summand to the union.
Relation insertion_graph(const InsertionMap& ins, std::size_t union_size);

/// Sorted list of state-name pairs: {"pairs":[["s0","t0"],...]}.
std::string dump_relation(const Relation& r, const NeighborhoodModel& left, const NeighborhoodModel& right);

}  // namespace nbmu
