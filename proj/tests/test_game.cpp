#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nbmu/denotation.hpp"
#include "nbmu/game.hpp"
#include "nbmu/generators.hpp"
#include "nbmu/parser.hpp"
#include "nbmu/syntax.hpp"
#include "support.hpp"

using namespace nbmu;
using testing::m1;
using testing::set_of;

TEST_CASE("arena shape for a box formula") {
  const auto m = m1();
  const auto a = build_arena(m, parse_mu("[]p"));
  CHECK(a.num_basic() == 2 * 2);
  const auto root = a.basic(0, 0);
  CHECK(a.owner[root] == Player::Eloise);
  REQUIRE(a.moves[root].size() == 1);
  const auto& mid = a.positions[a.moves[root][0]];
  CHECK(mid.kind == Position::Kind::Intermediate);
  CHECK(mid.chooser == Player::Abelard);
  CHECK(mid.neighborhood == set_of(2, {1}));
  CHECK(a.subformulas[mid.formula] == parse_mu("p"));
  // s1 has no neighborhoods: Eloise is stuck at (s1, []p)
  CHECK(a.moves[a.basic(1, 0)].empty());
}

TEST_CASE("literal positions are terminal") {
  const auto a = build_arena(m1(), parse_mu("p"));
  CHECK(a.size() == 2);
  CHECK(a.moves[a.basic(1, 0)].empty());
  CHECK(a.owner[a.basic(1, 0)] == Player::Abelard);
  CHECK(a.owner[a.basic(0, 0)] == Player::Eloise);

  const auto t = build_arena(m1(), parse_mu("true"));
  const auto sol = solve(t);
  CHECK(sol.win_eloise[t.basic(0, 0)]);
}

TEST_CASE("priorities follow the rank order") {
  CHECK(assign_priorities(parse_mu("mu p. []p")) == std::map<Var, unsigned>{{"p", 1}});
  CHECK(assign_priorities(parse_mu("nu q. mu p. []p \\/ <>q")) == std::map<Var, unsigned>{{"p", 1}, {"q", 2}});
  CHECK(assign_priorities(parse_mu("mu q. nu p. []p /\\ <>q")) == std::map<Var, unsigned>{{"p", 2}, {"q", 3}});
  CHECK(assign_priorities(parse_mu("nu p. mu q. nu r. []r /\\ <>q /\\ p")) ==
        std::map<Var, unsigned>{{"p", 4}, {"q", 3}, {"r", 2}});
}

TEST_CASE("winning regions on the two-state example") {
  const auto m = m1();
  auto region = [&](const char* text) {
    const auto a = build_arena(m, parse_mu(text));
    return winning_states(a, solve(a), 0);
  };
  CHECK(region("mu r. []r").none());
  CHECK(region("<>p").all());
  CHECK(winning(m, 0, parse_mu("[]p")));
  CHECK_FALSE(winning(m, 1, parse_mu("[]p")));
  CHECK(winning(m, 0, parse_mu("true")));
}

TEST_CASE("greatest fixpoint self-loop") {
  NeighborhoodModel m;
  m.states = {"s"};
  m.gens = {{set_of(1, {0})}};
  const auto a = build_arena(m, parse_mu("nu p. []p"));
  const auto sol = solve(a);
  CHECK(sol.win_eloise[a.basic(0, 0)]);
  CHECK(verify_strategy(a, sol, Player::Eloise));
  CHECK(verify_strategy(a, sol, Player::Abelard));

  const auto b = build_arena(m, parse_mu("mu p. []p"));
  CHECK(solve(b).win_abelard[b.basic(0, 0)]);
}

TEST_CASE("corrupted strategies are rejected") {
  std::mt19937_64 rng(13);
  FormulaParams fp;
  fp.max_depth = 5;
  fp.vocab = {"p"};
  int mutated = 0;
  for (int i = 0; i < 300 && mutated < 40; ++i) {
    const auto m = random_model(1 + i % 4, fp.vocab, {}, rng());
    const auto a = build_arena(m, random_formula(fp, rng));
    const auto sol = solve(a);
    for (auto player : {Player::Eloise, Player::Abelard}) {
      REQUIRE(verify_strategy(a, sol, player));
      for (std::size_t p = 0; p < a.size(); ++p) {
        if (a.owner[p] != player || !sol.wins(player, p)) continue;
        for (auto q : a.moves[p]) {
          if (sol.wins(player, q)) continue;
          auto bad = sol;
          bad.strategy(player)[p] = q;
          CHECK_FALSE(verify_strategy(a, bad, player));
          ++mutated;
          break;
        }
      }
    }
  }
  CHECK(mutated > 0);
}

TEST_CASE("game and semantics agree, regions partition") {
  std::mt19937_64 rng(23);
  FormulaParams fp;
  fp.max_depth = 6;
  fp.vocab = {"p", "q"};
  fp.global = true;
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(1 + i % 5, fp.vocab, {}, rng());
    const auto f = random_formula(fp, rng);
    const auto a = build_arena(m, f);
    const auto sol = solve(a);
    CHECK_MESSAGE(winning_states(a, sol, 0) == testing::OracleEval(m).eval(f), print_mu(f));
    for (std::size_t p = 0; p < a.size(); ++p) CHECK(sol.win_eloise[p] != sol.win_abelard[p]);
    CHECK(verify_strategy(a, sol, Player::Eloise));
    CHECK(verify_strategy(a, sol, Player::Abelard));
  }
}

TEST_CASE("generator arenas match full-closure arenas") {
  std::mt19937_64 rng(29);
  FormulaParams fp;
  fp.max_depth = 4;
  fp.vocab = {"p"};
  fp.global = true;
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(1 + i % 3, fp.vocab, {}, rng());
    const auto f = random_formula(fp, rng);
    const auto small = build_arena(m, f);
    const auto large = build_arena(m, f, NeighborhoodMode::UpwardClosure);
    CHECK(small.size() <= large.size());
    const auto s1 = solve(small);
    const auto s2 = solve(large);
    for (std::size_t k = 0; k < small.subformulas.size(); ++k)
      CHECK(winning_states(small, s1, k) == winning_states(large, s2, k));
  }
}

TEST_CASE("every cycle passes a bound variable") {
  std::mt19937_64 rng(31);
  FormulaParams fp;
  fp.max_depth = 5;
  fp.vocab = {"p"};
  for (int i = 0; i < 100; ++i) {
    const auto m = random_model(1 + i % 3, fp.vocab, {}, rng());
    const auto a = build_arena(m, random_formula(fp, rng));
    // drop the edges out of variable positions; what remains must be acyclic
    std::vector<int> state(a.size(), 0);
    bool cyclic = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t p) {
      state[p] = 1;
      if (a.priority[p] == 0) {
        for (auto q : a.moves[p]) {
          if (state[q] == 1) cyclic = true;
          if (state[q] == 0) dfs(q);
        }
      }
      state[p] = 2;
    };
    for (std::size_t p = 0; p < a.size(); ++p)
      if (state[p] == 0) dfs(p);
    CHECK_FALSE(cyclic);
  }
}

TEST_CASE("arena dump is a document") {
  const auto text = dump_arena(build_arena(m1(), parse_mu("<>p")), m1());
  CHECK(text.find("\"positions\"") != std::string::npos);
}
