#include "nbmu/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbmu {

MuFormula MuFormula::make(MuKind k, Var v, std::vector<MuFormula> children) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->var = std::move(v);
  std::size_t depth = 0;
  for (const auto& c : children) {
    n->size += c.size();
    depth = std::max(depth, c.depth());
  }
  n->depth = depth + 1;
  n->children = std::move(children);
  return MuFormula(std::move(n));
}

MuFormula MuFormula::atom(Var v) { return make(MuKind::Atom, std::move(v), {}); }
MuFormula MuFormula::neg_atom(Var v) { return make(MuKind::NegAtom, std::move(v), {}); }
MuFormula MuFormula::top() { return make(MuKind::Top, {}, {}); }
MuFormula MuFormula::bot() { return make(MuKind::Bot, {}, {}); }
MuFormula MuFormula::conj(MuFormula l, MuFormula r) {
  return make(MuKind::And, {}, {std::move(l), std::move(r)});
}
MuFormula MuFormula::disj(MuFormula l, MuFormula r) {
  return make(MuKind::Or, {}, {std::move(l), std::move(r)});
}
MuFormula MuFormula::box(MuFormula arg) { return make(MuKind::Box, {}, {std::move(arg)}); }
MuFormula MuFormula::dia(MuFormula arg) { return make(MuKind::Dia, {}, {std::move(arg)}); }
MuFormula MuFormula::gbox(MuFormula arg) { return make(MuKind::GBox, {}, {std::move(arg)}); }
MuFormula MuFormula::gdia(MuFormula arg) { return make(MuKind::GDia, {}, {std::move(arg)}); }
MuFormula MuFormula::mu(Var v, MuFormula body) {
  return make(MuKind::Mu, std::move(v), {std::move(body)});
}
MuFormula MuFormula::nu(Var v, MuFormula body) {
  return make(MuKind::Nu, std::move(v), {std::move(body)});
}

std::strong_ordering operator<=>(const MuFormula& a, const MuFormula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.var() <=> b.var(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.node_->children[i] <=> b.node_->children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool operator==(const MuFormula& a, const MuFormula& b) { return (a <=> b) == 0; }

NmsoFormula NmsoFormula::make(NmsoKind k, Var v, Var w, std::vector<NmsoFormula> children) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->v = std::move(v);
  n->w = std::move(w);
  n->children = std::move(children);
  return NmsoFormula(std::move(n));
}

NmsoFormula NmsoFormula::sr(Var v) { return make(NmsoKind::Sr, std::move(v), {}, {}); }
NmsoFormula NmsoFormula::sub(Var v, Var w) {
  return make(NmsoKind::Sub, std::move(v), std::move(w), {});
}
NmsoFormula NmsoFormula::box_rel(Var v, Var w) {
  return make(NmsoKind::BoxRel, std::move(v), std::move(w), {});
}
NmsoFormula NmsoFormula::negation(NmsoFormula f) { return make(NmsoKind::Not, {}, {}, {std::move(f)}); }
NmsoFormula NmsoFormula::conj(NmsoFormula l, NmsoFormula r) {
  return make(NmsoKind::And, {}, {}, {std::move(l), std::move(r)});
}
NmsoFormula NmsoFormula::disj(NmsoFormula l, NmsoFormula r) {
  return make(NmsoKind::Or, {}, {}, {std::move(l), std::move(r)});
}
NmsoFormula NmsoFormula::exists(Var v, NmsoFormula body) {
  return make(NmsoKind::Exists, std::move(v), {}, {std::move(body)});
}
NmsoFormula NmsoFormula::implies(NmsoFormula l, NmsoFormula r) {
  return make(NmsoKind::Implies, {}, {}, {std::move(l), std::move(r)});
}
NmsoFormula NmsoFormula::iff(NmsoFormula l, NmsoFormula r) {
  return make(NmsoKind::Iff, {}, {}, {std::move(l), std::move(r)});
}
NmsoFormula NmsoFormula::forall(Var v, NmsoFormula body) {
  return make(NmsoKind::Forall, std::move(v), {}, {std::move(body)});
}
NmsoFormula NmsoFormula::sing(Var v) { return make(NmsoKind::Sing, std::move(v), {}, {}); }
NmsoFormula NmsoFormula::empty(Var v) { return make(NmsoKind::Empty, std::move(v), {}, {}); }
NmsoFormula NmsoFormula::eqv(Var v, Var w) {
  return make(NmsoKind::Eqv, std::move(v), std::move(w), {});
}

NmsoFormula NmsoFormula::conj_all(std::vector<NmsoFormula> fs) {
  if (fs.empty()) throw std::invalid_argument("conj_all: empty conjunction");
  NmsoFormula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = conj(*it, acc);
  return acc;
}

bool NmsoFormula::is_core() const {
  switch (kind()) {
    case NmsoKind::Implies:
    case NmsoKind::Iff:
    case NmsoKind::Forall:
    case NmsoKind::Sing:
    case NmsoKind::Empty:
    case NmsoKind::Eqv:
      return false;
    default:
      break;
  }
  for (const auto& c : node_->children)
    if (!c.is_core()) return false;
  return true;
}

std::strong_ordering operator<=>(const NmsoFormula& a, const NmsoFormula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.var() <=> b.var(); c != 0) return c;
  if (auto c = a.var2() <=> b.var2(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.node_->children[i] <=> b.node_->children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool operator==(const NmsoFormula& a, const NmsoFormula& b) { return (a <=> b) == 0; }

}  // namespace nbmu
