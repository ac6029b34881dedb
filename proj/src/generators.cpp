#include "nbmu/generators.hpp"

#include <vector>

#include "nbmu/syntax.hpp"

namespace nbmu {

namespace {

class FormulaGen {
 public:
  FormulaGen(const FormulaParams& params, std::mt19937_64& rng)
      : params_(params), rng_(rng), names_(params.vocab), vocab_(params.vocab.begin(), params.vocab.end()) {}

  MuFormula root() {
    if (params_.binder_root && params_.max_depth > 1) return binder(chance(0.5) ? MuKind::Mu : MuKind::Nu, params_.max_depth);
    return gen(params_.max_depth);
  }

  MuFormula gen(std::size_t depth) {
    if (depth <= 1 || chance(params_.leaf_bias)) return leaf();
    std::vector<MuKind> kinds = {MuKind::And, MuKind::Or, MuKind::Box, MuKind::Dia};
    if (params_.global) kinds.insert(kinds.end(), {MuKind::GBox, MuKind::GDia});
    if (params_.fixpoints) kinds.insert(kinds.end(), {MuKind::Mu, MuKind::Nu, MuKind::Mu, MuKind::Nu});
    const auto kind = kinds[pick(kinds.size())];
    switch (kind) {
      case MuKind::And:
      case MuKind::Or: {
        auto l = gen(depth - 1);
        auto r = gen(depth - 1);
        return kind == MuKind::And ? MuFormula::conj(l, r) : MuFormula::disj(l, r);
      }
      case MuKind::Box: return MuFormula::box(gen(depth - 1));
      case MuKind::Dia: return MuFormula::dia(gen(depth - 1));
      case MuKind::GBox: return MuFormula::gbox(gen(depth - 1));
      case MuKind::GDia: return MuFormula::gdia(gen(depth - 1));
      default: return binder(kind, depth);
    }
  }

 private:
  MuFormula binder(MuKind kind, std::size_t depth) {
    Var v = names_.fresh("x");
    scope_.push_back(v);
    auto body = gen(depth - 1);
    scope_.pop_back();
    return kind == MuKind::Mu ? MuFormula::mu(v, body) : MuFormula::nu(v, body);
  }

  MuFormula leaf() {
    if (!scope_.empty() && chance(0.5)) return MuFormula::atom(scope_[pick(scope_.size())]);
    const std::size_t literals = vocab_.empty() ? 0 : 4;
    const auto r = pick(literals + 2);
    if (r < literals) {
      const auto& v = vocab_[pick(vocab_.size())];
      return r % 2 == 0 ? MuFormula::atom(v) : MuFormula::neg_atom(v);
    }
    return r == literals ? MuFormula::top() : MuFormula::bot();
  }

  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  const FormulaParams& params_;
  std::mt19937_64& rng_;
  NameSupply names_;
  std::vector<Var> vocab_;
  std::vector<Var> scope_;
};

}  // namespace

MuFormula random_formula(const FormulaParams& params, std::mt19937_64& rng) {
  return FormulaGen(params, rng).root();
}

MuFormula random_formula(const FormulaParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_formula(params, rng);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nbmu
