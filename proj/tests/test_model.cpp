#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nbmu/errors.hpp"
#include "nbmu/model.hpp"
#include "nbmu/model_io.hpp"
#include "support.hpp"

using namespace nbmu;
using testing::m1;
using testing::set_of;

TEST_CASE("validate reports each violation") {
  CHECK(validate(m1()).empty());

  auto bad = m1();
  bad.gens[0] = {set_of(2, {1}), set_of(2, {0, 1})};
  CHECK(validate(bad).size() == 1);

  auto outside = m1();
  outside.valuation["p"] = StateSet(3, 0b100);
  CHECK_FALSE(validate(outside).empty());

  auto both = bad;
  both.valuation["p"] = StateSet(3, 0b100);
  CHECK(validate(both).size() >= 2);
  CHECK_THROWS_AS(require_valid(both), ValidationError);
}

TEST_CASE("neighborhood membership is monotone") {
  const auto m = m1();
  CHECK(contains_neighborhood(m, 0, set_of(2, {1})));
  CHECK(contains_neighborhood(m, 0, set_of(2, {0, 1})));
  CHECK_FALSE(contains_neighborhood(m, 1, set_of(2, {0, 1})));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_model(1 + i % 3, {"p"}, {}, rng());
    const auto subsets = testing::all_subsets(r.size());
    for (StateId s = 0; s < r.size(); ++s) {
      const auto closure = upward_closure(r, s);
      for (const auto& z : subsets) {
        const bool in = contains_neighborhood(r, s, z);
        CHECK(in == (std::find(closure.begin(), closure.end(), z) != closure.end()));
        for (const auto& z2 : subsets)
          if (in && z.is_subset_of(z2)) CHECK(contains_neighborhood(r, s, z2));
      }
    }
  }
}

TEST_CASE("upward closure") {
  const auto m = m1();
  const auto c0 = upward_closure(m, 0);
  CHECK(std::set<StateSet>(c0.begin(), c0.end()) == std::set<StateSet>{set_of(2, {1}), set_of(2, {0, 1})});
  CHECK(upward_closure(m, 1).empty());

  NeighborhoodModel everything;
  everything.states = {"a", "b"};
  everything.gens = {{StateSet(2)}, {}};
  CHECK(upward_closure(everything, 0).size() == 4);

  NeighborhoodModel big;
  for (int i = 0; i < 13; ++i) big.states.push_back("s" + std::to_string(i));
  big.gens.assign(13, {});
  CHECK_THROWS_AS(upward_closure(big, 0), GuardError);
}

TEST_CASE("disjoint union") {
  const auto [u, maps] = disjoint_union({m1(), m1()});
  CHECK(u.size() == 4);
  CHECK(maps.size() == 2);
  CHECK(u.gens[maps[0].image[0]] == std::vector<StateSet>{singleton(4, maps[0].image[1])});
  CHECK(u.valuation.at("p") == (singleton(4, maps[0].image[1]) | singleton(4, maps[1].image[1])));

  const auto [single, smap] = disjoint_union({m1()});
  CHECK(single.size() == 2);
  CHECK(single.gens[smap[0].image[0]] == std::vector<StateSet>{singleton(2, smap[0].image[1])});

  NeighborhoodModel other = m1();
  other.valuation = {{"q", StateSet(2)}};
  CHECK_THROWS_AS(disjoint_union({m1(), other}), std::invalid_argument);

  // a set is a neighborhood of an inserted state iff its preimage is one of
  // the original state
  std::mt19937_64 rng(2);
  for (int i = 0; i < 60; ++i) {
    const auto a = random_model(1 + i % 3, {"p"}, {}, rng());
    const auto b = random_model(1 + (i / 3) % 3, {"p"}, {}, rng());
    const auto [joined, ins] = disjoint_union({a, b});
    const std::vector<const NeighborhoodModel*> parts{&a, &b};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& part = *parts[k];
      for (StateId s = 0; s < part.size(); ++s) {
        for (const auto& z : testing::all_subsets(joined.size())) {
          StateSet pre(part.size());
          for (StateId t = 0; t < part.size(); ++t) pre[t] = z[ins[k].image[t]];
          CHECK(contains_neighborhood(joined, ins[k].image[s], z) == contains_neighborhood(part, s, pre));
        }
      }
    }
  }
}

TEST_CASE("Kripke conversions") {
  KripkeModel k;
  k.states = {"a", "b"};
  k.successors = {set_of(2, {1}), StateSet(2)};
  const auto m = from_kripke(k);
  CHECK(m.gens[0] == std::vector<StateSet>{set_of(2, {1})});
  CHECK(m.gens[1] == std::vector<StateSet>{StateSet(2)});
  CHECK(to_kripke(m) == k);

  KripkeModel complete;
  complete.states = {"a", "b"};
  complete.successors = {set_of(2, {0, 1}), set_of(2, {0, 1})};
  CHECK(from_kripke(complete).gens[0] == std::vector<StateSet>{set_of(2, {0, 1})});

  const auto km1 = to_kripke(m1());
  CHECK(km1.successors[0] == set_of(2, {1}));
  CHECK(km1.successors[1] == set_of(2, {0, 1}));

  NeighborhoodModel split;
  split.states = {"u", "a", "b"};
  split.gens = {{set_of(3, {1}), set_of(3, {2})}, {}, {}};
  CHECK(to_kripke(split).successors[0].none());

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = random_kripke(1 + seed % 6, {"p", "q"}, 0.4, seed);
    CHECK(to_kripke(from_kripke(r)) == r);
  }
}

TEST_CASE("enumeration counts") {
  CHECK(antichains(1).size() == 3);
  CHECK(antichains(2).size() == 6);
  CHECK(all_models(1, {"p"}).size() == 6);
  CHECK(all_models(2, {"p"}).size() == 144);
  CHECK(all_models(1, {}).size() == 3);
  CHECK_THROWS_AS(all_models(4, {"p"}), GuardError);

  const auto ms = all_models(2, {"p"});
  for (std::size_t i = 0; i < ms.size(); ++i) {
    CHECK(validate(ms[i]).empty());
    for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK_FALSE(ms[i] == ms[j]);
  }
}

TEST_CASE("random models") {
  RandomModelParams p;
  CHECK(random_model(3, {"p"}, p, 42) == random_model(3, {"p"}, p, 42));
  for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(validate(random_model(1 + seed % 5, {"p", "q"}, p, seed)).empty());
  p.neighborhood_density = 0;
  const auto empty = random_model(4, {"p"}, p, 9);
  for (const auto& g : empty.gens) CHECK(g.empty());
}

TEST_CASE("model documents") {
  const std::string sample =
      R"({"states":["s0","s1"],"neighborhoods":{"s0":[["s1"]],"s1":[]},"valuation":{"p":["s1"]},"point":"s0"})";
  const auto m = read_model(sample);
  CHECK(m.point == StateId{0});
  CHECK(write_model(m) == sample);

  CHECK_THROWS_AS(read_model(R"({"states":["s0","s1"],"neighborhoods":{"s0":[["s1"],["s0","s1"]],"s1":[]},"valuation":{}})"),
                  ValidationError);
  CHECK_THROWS_AS(read_model("{\"states\": [}"), ParseError);
  CHECK_THROWS_AS(read_model(R"({"states":["s0"],"neighborhoods":{},"valuation":{}})"), ValidationError);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = random_model(1 + seed % 5, {"p", "q"}, {}, seed);
    CHECK(read_model(write_model(r)) == r);
  }
}
