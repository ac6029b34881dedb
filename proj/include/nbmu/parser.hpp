#pragma once

#include <string>
#include <string_view>

#include "nbmu/formula.hpp"

namespace nbmu {

// Concrete syntax.
//
//   formula := "mu" id "." formula | "nu" id "." formula | disj
//   disj    := conj { "\/" conj }
//   conj    := unary { "/\" unary }
//   unary   := "[]" unary | "<>" unary | "[A]" unary | "[E]" unary | atom
//   atom    := id | "~" id | "true" | "false" | "(" formula ")"
//
//   nform  := "exists" id "." nform | "forall" id "." nform | ndisj
//   ndisj  := nconj { "|" nconj }
//   nconj  := nneg { "&" nneg }
//   nneg   := "~" nneg | natom | "(" nform ( "->" | "<->" ) nform ")"
//   natom  := "sr(" id ")" | id "<=" id | "box(" id "," id ")" | "sing(" id ")"
//           | "empty(" id ")" | "eqv(" id "," id ")" | "(" nform ")"
//
// Binary connectives associate to the left. Binders extend as far right as
// possible.

/// Throws ParseError. Also rejects a bound variable occurring negated
/// inside its own binder.
MuFormula parse_mu(std::string_view text);
std::string print_mu(const MuFormula& f);

NmsoFormula parse_nmso(std::string_view text);
std::string print_nmso(const NmsoFormula& f);

bool is_reserved_word(std::string_view s);
bool is_valid_identifier(std::string_view s);

}  // namespace nbmu
