#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nbmu/bisim.hpp"
#include "nbmu/denotation.hpp"
#include "nbmu/generators.hpp"
#include "nbmu/parser.hpp"
#include "support.hpp"

using namespace nbmu;
using testing::m1;
using testing::set_of;

namespace {

Relation identity(std::size_t n) {
  Relation r(n, n);
  for (StateId s = 0; s < n; ++s) r.add(s, s);
  return r;
}

/// M1 with s1 split into two p-states; s0's generator names the first copy.
NeighborhoodModel m1_split() {
  NeighborhoodModel m;
  m.states = {"s0", "s1a", "s1b"};
  m.gens = {{set_of(3, {1})}, {}, {}};
  m.valuation["p"] = set_of(3, {1, 2});
  return m;
}

NeighborhoodModel m1_no_generators() {
  auto m = m1();
  m.gens[0].clear();
  return m;
}

/// Bisimilarity by brute force: the largest relation among all subsets of
/// pairs that passes is_bisimulation (only for tiny models).
Relation brute_greatest(const NeighborhoodModel& a, const NeighborhoodModel& b) {
  const auto n = a.size() * b.size();
  Relation best(a.size(), b.size());
  for (unsigned long bits = 0; bits < (1UL << n); ++bits) {
    Relation r(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k)
      if (bits >> k & 1) r.add(k / b.size(), k % b.size());
    if (is_bisimulation(a, b, r)) best |= r;
  }
  return best;
}

}  // namespace

TEST_CASE("candidate relations") {
  const auto m = m1();
  CHECK(is_bisimulation(m, m, identity(2)));

  const auto [u, maps] = disjoint_union({m, m});
  CHECK(is_bisimulation(m, u, insertion_graph(maps[0], u.size())));
  CHECK(is_bisimulation(m, u, insertion_graph(maps[1], u.size())));

  NeighborhoodModel dead;
  dead.states = {"t0"};
  dead.gens = {{}};
  dead.valuation["p"] = StateSet(1);
  Relation r(2, 1);
  r.add(0, 0);
  CHECK_FALSE(is_bisimulation(m, dead, r));

  // atomic harmony: the empty-family states s1 and t0 differ on p
  Relation r2(2, 1);
  r2.add(1, 0);
  CHECK_FALSE(is_bisimulation(m, dead, r2));

  NeighborhoodModel other = dead;
  other.valuation = {{"q", StateSet(1)}};
  CHECK_THROWS_AS(is_bisimulation(m, other, Relation(2, 1)), std::invalid_argument);
}

TEST_CASE("greatest bisimulation examples") {
  const auto m = m1();
  const auto g = greatest_bisimulation(m, m);
  CHECK(g.contains(0, 0));
  CHECK(g.contains(1, 1));

  const auto split = m1_split();
  const auto gs = greatest_bisimulation(m, split);
  CHECK(gs.contains(0, 0));
  CHECK(gs.contains(1, 1));
  CHECK(gs.contains(1, 2));
  Relation explicit_rel(2, 3);
  explicit_rel.add(0, 0);
  explicit_rel.add(1, 1);
  explicit_rel.add(1, 2);
  CHECK(is_bisimulation(m, split, explicit_rel));

  CHECK_FALSE(greatest_bisimulation(m, m1_no_generators()).contains(0, 0));

  CHECK(dump_relation(gs, m, split) == R"({"pairs":[["s0","s0"],["s1","s1a"],["s1","s1b"]]})");
}

TEST_CASE("pointed and global bisimilarity") {
  const auto m = m1();
  const auto [u, maps] = disjoint_union({m, m});
  CHECK(bisimilar(m, 0, u, maps[0].image[0]));
  CHECK(bisimilar(m, 1, m, 1));

  NeighborhoodModel dead;
  dead.states = {"t"};
  dead.gens = {{}};
  dead.valuation["p"] = set_of(1, {0});
  CHECK_FALSE(bisimilar(m, 0, dead, 0));
  CHECK(bisimilar(m, 1, dead, 0));
  // s0 has no partner in the single-state model
  CHECK_FALSE(globally_bisimilar(m, 1, dead, 0));
  CHECK(globally_bisimilar(m, 0, u, maps[1].image[0]));
}

TEST_CASE("refinement agrees with exhaustive search") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 60; ++i) {
    const auto a = random_model(1 + i % 2, {"p"}, {}, rng());
    const auto b = random_model(1 + (i / 2) % 3, {"p"}, {}, rng());
    CHECK(greatest_bisimulation(a, b) == brute_greatest(a, b));
  }
}

TEST_CASE("generator refinement equals closure refinement") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 150; ++i) {
    const auto a = random_model(1 + i % 3, {"p"}, {}, rng());
    const auto b = random_model(1 + (i / 3) % 3, {"p"}, {}, rng());
    CHECK(greatest_bisimulation(a, b) == greatest_bisimulation(a, b, NeighborhoodMode::UpwardClosure));
  }
}

TEST_CASE("bisimilar points satisfy the same global-free formulas") {
  std::mt19937_64 rng(43);
  FormulaParams fp;
  fp.max_depth = 5;
  fp.vocab = {"p"};
  for (int i = 0; i < 100; ++i) {
    const auto a = random_model(1 + i % 3, fp.vocab, {}, rng());
    const auto b = random_model(1 + (i / 3) % 3, fp.vocab, {}, rng());
    const auto g = greatest_bisimulation(a, b);
    for (int j = 0; j < 10; ++j) {
      const auto f = random_formula(fp, rng);
      const auto ea = eval_mu(a, f);
      const auto eb = eval_mu(b, f);
      for (const auto& [s, t] : g.pairs()) CHECK(ea.test(s) == eb.test(t));
    }
  }
}
