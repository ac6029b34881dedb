#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nbmu/formula.hpp"
#include "nbmu/model.hpp"

namespace nbmu {

/// Eloise (the existential player) and Abelard (the universal player).
enum class Player { Eloise, Abelard };

constexpr Player opponent(Player p) { return p == Player::Eloise ? Player::Abelard : Player::Eloise; }

struct Position {
  enum class Kind { Basic, Intermediate };
  Kind kind = Kind::Basic;
  StateId state = 0;
  /// Intermediate positions only: who picks from the neighborhood, and which.
  Player chooser = Player::Eloise;
  StateSet neighborhood;
  /// Index into Arena::subformulas.
  std::size_t formula = 0;
};

/// Which neighborhoods the modal moves range over: the generator antichain,
/// or the full upward closure (small models only; used as an oracle).
enum class NeighborhoodMode { Generators, UpwardClosure };

/// Evaluation game of a formula on a model as a max-parity game. A position
/// without moves is lost by its owner; an infinite play is won by Eloise iff
/// the largest priority seen infinitely often is even.
struct Arena {
  std::vector<MuFormula> subformulas;  // root first
  std::size_t num_states = 0;
  std::vector<Position> positions;     // basic positions first
  std::vector<Player> owner;
  std::vector<std::vector<std::size_t>> moves;
  std::vector<unsigned> priority;

  std::size_t size() const { return positions.size(); }
  std::size_t num_basic() const { return num_states * subformulas.size(); }
  std::size_t basic(StateId s, std::size_t formula) const { return s * subformulas.size() + formula; }
  /// Index of a subformula; throws std::out_of_range.
  std::size_t formula_index(const MuFormula& f) const;
};

/// Requires f well-named with free variables in the model's vocabulary.
Arena build_arena(const NeighborhoodModel& m, const MuFormula& f,
                  NeighborhoodMode mode = NeighborhoodMode::Generators);

/// Priorities for bound variables along rank_order: strictly increasing,
/// odd for mu-variables and even for nu-variables, starting from 1.
std::map<Var, unsigned> assign_priorities(const MuFormula& f);

struct Solution {
  std::vector<bool> win_eloise;
  std::vector<bool> win_abelard;
  /// Positional strategies, defined on the player's own positions with moves
  /// inside the player's winning region.
  std::vector<std::optional<std::size_t>> strategy_eloise;
  std::vector<std::optional<std::size_t>> strategy_abelard;

  bool wins(Player p, std::size_t pos) const {
    return p == Player::Eloise ? win_eloise[pos] : win_abelard[pos];
  }
  const std::vector<std::optional<std::size_t>>& strategy(Player p) const {
    return p == Player::Eloise ? strategy_eloise : strategy_abelard;
  }
  std::vector<std::optional<std::size_t>>& strategy(Player p) {
    return p == Player::Eloise ? strategy_eloise : strategy_abelard;
  }
};

/// Recursive (Zielonka) max-parity solver.
Solution solve(const Arena& a);

/// Whether Eloise wins the basic position (s, f) of the game for f.
bool winning(const NeighborhoodModel& m, StateId s, const MuFormula& f);

/// Checks that the player's strategy wins everywhere in the player's region:
/// the player is never stuck, play never leaves the region, and every cycle
/// consistent with the strategy has a top priority of the player's parity.
bool verify_strategy(const Arena& a, const Solution& sol, Player player);

/// Extension of subformula `formula` according to the solution: states s with
/// (s, formula) won by Eloise.
StateSet winning_states(const Arena& a, const Solution& sol, std::size_t formula);

/// JSON dump of positions, owners, priorities and moves, for debugging.
std::string dump_arena(const Arena& a, const NeighborhoodModel& m);

}  // namespace nbmu
