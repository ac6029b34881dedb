#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nbmu/denotation.hpp"
#include "nbmu/errors.hpp"
#include "nbmu/generators.hpp"
#include "nbmu/parser.hpp"
#include "nbmu/syntax.hpp"
#include "support.hpp"

using namespace nbmu;
using testing::m1;
using testing::set_of;

namespace {

StateSet ev(const NeighborhoodModel& m, const char* text) { return eval_mu(m, parse_mu(text)); }

/// Core-only NMSO semantics by plain recursion, no caching.
bool nmso_oracle(const NeighborhoodModel& m, StateId point, const NmsoFormula& f, std::map<Var, StateSet>& env) {
  auto val = [&](const Var& v) { return env.count(v) ? env.at(v) : m.valuation.at(v); };
  switch (f.kind()) {
    case NmsoKind::Sr: return val(f.var()) == singleton(m.size(), point);
    case NmsoKind::Sub: return val(f.var()).is_subset_of(val(f.var2()));
    case NmsoKind::BoxRel: {
      const auto z = val(f.var2());
      for (auto t : members(val(f.var())))
        if (!contains_neighborhood(m, t, z)) return false;
      return true;
    }
    case NmsoKind::Not: return !nmso_oracle(m, point, f.body(), env);
    case NmsoKind::And: return nmso_oracle(m, point, f.left(), env) && nmso_oracle(m, point, f.right(), env);
    case NmsoKind::Or: return nmso_oracle(m, point, f.left(), env) || nmso_oracle(m, point, f.right(), env);
    case NmsoKind::Exists: {
      const auto saved = env.count(f.var()) ? std::optional<StateSet>(env.at(f.var())) : std::nullopt;
      bool found = false;
      for (const auto& z : testing::all_subsets(m.size())) {
        env[f.var()] = z;
        if (nmso_oracle(m, point, f.body(), env)) {
          found = true;
          break;
        }
      }
      if (saved)
        env[f.var()] = *saved;
      else
        env.erase(f.var());
      return found;
    }
    default: throw std::logic_error("sugar reached the oracle");
  }
}

NmsoFormula random_nmso(std::mt19937_64& rng, int depth, std::vector<Var>& scope) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto var = [&] { return scope[pick(scope.size())]; };
  if (depth == 0) {
    switch (pick(6)) {
      case 0: return NmsoFormula::sr(var());
      case 1: return NmsoFormula::box_rel(var(), var());
      case 2: return NmsoFormula::sing(var());
      case 3: return NmsoFormula::eqv(var(), var());
      default: return NmsoFormula::sub(var(), var());
    }
  }
  switch (pick(7)) {
    case 0: return NmsoFormula::negation(random_nmso(rng, depth - 1, scope));
    case 1: return NmsoFormula::conj(random_nmso(rng, depth - 1, scope), random_nmso(rng, depth - 1, scope));
    case 2: return NmsoFormula::disj(random_nmso(rng, depth - 1, scope), random_nmso(rng, depth - 1, scope));
    case 3: return NmsoFormula::iff(random_nmso(rng, depth - 1, scope), random_nmso(rng, depth - 1, scope));
    default: {
      const Var v = "x" + std::to_string(scope.size());
      scope.push_back(v);
      auto body = random_nmso(rng, depth - 1, scope);
      scope.pop_back();
      return pick(2) ? NmsoFormula::exists(v, body) : NmsoFormula::forall(v, body);
    }
  }
}

}  // namespace

TEST_CASE("extensions on the two-state example") {
  const auto m = m1();
  CHECK(ev(m, "[]p") == set_of(2, {0}));
  CHECK(ev(m, "<>p") == set_of(2, {0, 1}));
  CHECK(ev(m, "mu r. []r") == set_of(2, {}));
  CHECK(ev(m, "true") == set_of(2, {0, 1}));
  CHECK(ev(m, "[E]p") == set_of(2, {0, 1}));
  CHECK(ev(m, "[A]p") == set_of(2, {}));
  // disjunction is union
  CHECK(ev(m, "p \\/ []p") == set_of(2, {0, 1}));
  CHECK(ev(m, "nu r. []r") == set_of(2, {}));
}

TEST_CASE("free variables need values") {
  CHECK_THROWS_AS(ev(m1(), "q"), std::invalid_argument);
  CHECK(eval_mu(m1(), parse_mu("q"), {{"q", set_of(2, {0})}}) == set_of(2, {0}));
}

TEST_CASE("evaluation matches the subset-enumeration oracle") {
  std::mt19937_64 rng(17);
  FormulaParams fp;
  fp.max_depth = 6;
  fp.vocab = {"p", "q"};
  fp.global = true;
  for (int i = 0; i < 400; ++i) {
    const auto m = random_model(1 + i % 3, fp.vocab, {}, rng());
    const auto f = random_formula(fp, rng);
    CHECK_MESSAGE(eval_mu(m, f) == testing::OracleEval(m).eval(f), print_mu(f));
  }
}

TEST_CASE("box and diamond are dual") {
  std::mt19937_64 rng(4);
  FormulaParams fp;
  fp.max_depth = 4;
  fp.vocab = {"p"};
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(1 + i % 3, fp.vocab, {}, rng());
    const auto f = random_formula(fp, rng);
    CHECK(eval_mu(m, MuFormula::dia(f)) == ~eval_mu(m, MuFormula::box(negate(f))));
  }
}

TEST_CASE("monotone dependence on a positive variable") {
  std::mt19937_64 rng(6);
  FormulaParams fp;
  fp.max_depth = 4;
  fp.vocab = {"p", "v"};
  for (int i = 0; i < 200; ++i) {
    const auto m = random_model(1 + i % 3, {"p"}, {}, rng());
    auto f = random_formula(fp, rng);
    // drop the negated occurrences of v so that v is positive
    const auto text = print_mu(f);
    if (text.find("~v") != std::string::npos) continue;
    for (const auto& z : testing::all_subsets(m.size()))
      for (const auto& z2 : testing::all_subsets(m.size()))
        if (z.is_subset_of(z2)) CHECK(eval_mu(m, f, {{"v", z}}).is_subset_of(eval_mu(m, f, {{"v", z2}})));
  }
}

TEST_CASE("approximants") {
  std::mt19937_64 rng(9);
  const auto f = parse_mu("mu r. []r \\/ []q");
  for (int i = 0; i < 100; ++i) {
    const auto m = random_model(1 + i % 3, {"q"}, {}, rng());
    const auto chain = approximants(m, f, 10);
    CHECK(chain.front().none());
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) CHECK(chain[k].is_subset_of(chain[k + 1]));
    CHECK(chain.size() <= m.size() + 1);
    CHECK(chain.back() == eval_mu(m, f));
    // []q \/ [][]q \/ ... up to |S| boxes
    auto term = parse_mu("[]q");
    auto unrolled = term;
    for (std::size_t k = 1; k < m.size(); ++k) {
      term = MuFormula::box(term);
      unrolled = MuFormula::disj(unrolled, term);
    }
    CHECK(eval_mu(m, unrolled) == chain.back());
  }

  const auto g = parse_mu("nu r. <>r /\\ q");
  const auto m = random_model(3, {"q"}, {}, 1);
  const auto chain = approximants(m, g, 10);
  CHECK(chain.front().all());
  CHECK(chain.back() == eval_mu(m, g));
  CHECK_THROWS_AS(approximants(m, parse_mu("q"), 3), std::invalid_argument);
}

TEST_CASE("NMSO atoms at the two-state example") {
  const auto m = m1();
  const PointedModel at0{m, 0};
  CHECK(eval_nmso(at0, parse_nmso("sr(q)"), {{"q", set_of(2, {0})}}));
  CHECK(eval_nmso(at0, parse_nmso("box(q,p)"), {{"q", set_of(2, {0})}}));
  CHECK(eval_nmso(at0, parse_nmso("exists r. p <= r")));
  CHECK_FALSE(eval_nmso(at0, parse_nmso("box(q,p)"), {{"q", set_of(2, {0, 1})}}));
  CHECK_THROWS_AS(eval_nmso(at0, parse_nmso("sr(zz)")), std::invalid_argument);
}

TEST_CASE("NMSO guards") {
  NeighborhoodModel big;
  for (int i = 0; i < 13; ++i) big.states.push_back("s" + std::to_string(i));
  big.gens.assign(13, {});
  CHECK_THROWS_AS(eval_nmso(PointedModel{big, 0}, parse_nmso("exists x. sr(x)")), GuardError);
  const auto deep = parse_nmso(
      "exists a. exists b. exists c. exists d. exists e. exists f. exists g. exists h. exists i. sr(i)");
  CHECK_THROWS_AS(eval_nmso(PointedModel{m1(), 0}, deep), GuardError);
  CHECK(eval_nmso(PointedModel{m1(), 0}, deep, {}, {12, 9}));
}

TEST_CASE("NMSO evaluation matches a plain recursive oracle") {
  std::mt19937_64 rng(21);
  int trues = 0;
  for (int i = 0; i < 300; ++i) {
    const auto m = random_model(1 + i % 3, {"p", "q"}, {}, rng());
    std::vector<Var> scope{"p", "q"};
    const auto f = random_nmso(rng, 1 + i % 5, scope);
    const auto core = desugar_nmso(f);
    for (StateId s = 0; s < m.size(); ++s) {
      std::map<Var, StateSet> env;
      const bool expected = nmso_oracle(m, s, core, env);
      trues += expected;
      CHECK_MESSAGE(eval_nmso(PointedModel{m, s}, f) == expected, print_nmso(f));
      CHECK(eval_nmso(PointedModel{m, s}, core) == expected);
    }
  }
  CHECK(trues > 0);
}

TEST_CASE("variable formulas agree with their atomic encoding") {
  const auto m = m1();
  for (StateId s = 0; s < m.size(); ++s) {
    // s satisfies p iff the point's singleton lies inside V(p)
    const bool nmso = eval_nmso(PointedModel{m, s}, parse_nmso("exists x. sr(x) & x <= p"));
    CHECK(nmso == eval_mu(m, parse_mu("p")).test(s));
  }
}
