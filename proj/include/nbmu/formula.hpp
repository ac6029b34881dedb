#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace nbmu {

/// Propositional (second-order) variable name.
using Var = std::string;

enum class MuKind { Atom, NegAtom, Top, Bot, And, Or, Box, Dia, GBox, GDia, Mu, Nu };

/// Immutable formula of the monotone modal mu-calculus with global modalities,
/// in negation normal form. Copies share structure.
///
/// Equality and ordering are structural.
class MuFormula {
 public:
  static MuFormula atom(Var v);
  static MuFormula neg_atom(Var v);
  static MuFormula top();
  static MuFormula bot();
  static MuFormula conj(MuFormula l, MuFormula r);
  static MuFormula disj(MuFormula l, MuFormula r);
  static MuFormula box(MuFormula arg);
  static MuFormula dia(MuFormula arg);
  static MuFormula gbox(MuFormula arg);
  static MuFormula gdia(MuFormula arg);
  static MuFormula mu(Var v, MuFormula body);
  static MuFormula nu(Var v, MuFormula body);

  MuKind kind() const { return node_->kind; }
  /// Variable of an atom, negated atom or binder.
  const Var& var() const { return node_->var; }
  /// Left operand of a binary connective; argument of a modality; body of a binder.
  const MuFormula& left() const { return node_->children[0]; }
  const MuFormula& right() const { return node_->children[1]; }
  const MuFormula& arg() const { return node_->children[0]; }
  const MuFormula& body() const { return node_->children[0]; }
  std::size_t arity() const { return node_->children.size(); }

  bool is_binary() const { return kind() == MuKind::And || kind() == MuKind::Or; }
  bool is_modal() const {
    auto k = kind();
    return k == MuKind::Box || k == MuKind::Dia || k == MuKind::GBox || k == MuKind::GDia;
  }
  bool is_binder() const { return kind() == MuKind::Mu || kind() == MuKind::Nu; }
  bool is_literal() const { return kind() == MuKind::Atom || kind() == MuKind::NegAtom; }

  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  /// Height of the syntax tree; leaves have depth 1.
  std::size_t depth() const { return node_->depth; }

  friend bool operator==(const MuFormula& a, const MuFormula& b);
  friend std::strong_ordering operator<=>(const MuFormula& a, const MuFormula& b);

 private:
  struct Node {
    MuKind kind;
    Var var;
    std::vector<MuFormula> children;
    std::size_t size = 1;
    std::size_t depth = 1;
  };
  explicit MuFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static MuFormula make(MuKind k, Var v, std::vector<MuFormula> children);

  std::shared_ptr<const Node> node_;
};

enum class NmsoKind {
  // core
  Sr, Sub, BoxRel, Not, And, Or, Exists,
  // sugar
  Implies, Iff, Forall, Sing, Empty, Eqv
};

/// Formula of single-sorted monadic second-order logic over neighborhood
/// structures. Sugar constructors are removed by desugar_nmso.
class NmsoFormula {
 public:
  static NmsoFormula sr(Var v);
  static NmsoFormula sub(Var v, Var w);
  static NmsoFormula box_rel(Var v, Var w);
  static NmsoFormula negation(NmsoFormula f);
  static NmsoFormula conj(NmsoFormula l, NmsoFormula r);
  static NmsoFormula disj(NmsoFormula l, NmsoFormula r);
  static NmsoFormula exists(Var v, NmsoFormula body);
  static NmsoFormula implies(NmsoFormula l, NmsoFormula r);
  static NmsoFormula iff(NmsoFormula l, NmsoFormula r);
  static NmsoFormula forall(Var v, NmsoFormula body);
  static NmsoFormula sing(Var v);
  static NmsoFormula empty(Var v);
  static NmsoFormula eqv(Var v, Var w);

  /// Right-nested conjunction of a nonempty list.
  static NmsoFormula conj_all(std::vector<NmsoFormula> fs);

  NmsoKind kind() const { return node_->kind; }
  /// First variable of an atom, or the bound variable of a quantifier.
  const Var& var() const { return node_->v; }
  /// Second variable of a binary atom.
  const Var& var2() const { return node_->w; }
  const NmsoFormula& left() const { return node_->children[0]; }
  const NmsoFormula& right() const { return node_->children[1]; }
  const NmsoFormula& body() const { return node_->children[0]; }
  std::size_t arity() const { return node_->children.size(); }

  bool is_atomic() const { return node_->children.empty(); }
  bool is_quantifier() const { return kind() == NmsoKind::Exists || kind() == NmsoKind::Forall; }
  bool is_core() const;

  friend bool operator==(const NmsoFormula& a, const NmsoFormula& b);
  friend std::strong_ordering operator<=>(const NmsoFormula& a, const NmsoFormula& b);

 private:
  struct Node {
    NmsoKind kind;
    Var v, w;
    std::vector<NmsoFormula> children;
  };
  explicit NmsoFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static NmsoFormula make(NmsoKind k, Var v, Var w, std::vector<NmsoFormula> children);

  std::shared_ptr<const Node> node_;
};

}  // namespace nbmu
