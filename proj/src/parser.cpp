#include "nbmu/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

#include "nbmu/errors.hpp"

namespace nbmu {

namespace {

constexpr std::array kReserved = {"mu",  "nu",   "true",  "false", "exists", "forall", "sr",
                                  "box", "sing", "empty", "eqv",   "A",      "E"};

enum class Tok {
  Ident, Dot, Or, And, Box, Dia, GBox, GDia, Tilde, LParen, RParen,
  Pipe, Amp, Arrow, DArrow, Le, Comma, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Dot: return "'.'";
    case Tok::Or: return "'\\/'";
    case Tok::And: return "'/\\'";
    case Tok::Box: return "'[]'";
    case Tok::Dia: return "'<>'";
    case Tok::GBox: return "'[A]'";
    case Tok::GDia: return "'[E]'";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Pipe: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::Le: return "'<='";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l0 = line, c0 = col;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      advance(j - i);
      out.push_back({Tok::Ident, std::move(word), l0, c0});
      continue;
    }
    struct Fixed {
      std::string_view s;
      Tok t;
    };
    // Longest spellings first.
    static constexpr std::array kFixed = {
        Fixed{"<->", Tok::DArrow}, Fixed{"[A]", Tok::GBox}, Fixed{"[E]", Tok::GDia},
        Fixed{"\\/", Tok::Or},     Fixed{"/\\", Tok::And},  Fixed{"[]", Tok::Box},
        Fixed{"<>", Tok::Dia},     Fixed{"->", Tok::Arrow}, Fixed{"<=", Tok::Le},
        Fixed{".", Tok::Dot},      Fixed{"~", Tok::Tilde},  Fixed{"(", Tok::LParen},
        Fixed{")", Tok::RParen},   Fixed{"|", Tok::Pipe},   Fixed{"&", Tok::Amp},
        Fixed{",", Tok::Comma},
    };
    bool matched = false;
    for (const auto& f : kFixed) {
      if (starts(f.s)) {
        out.push_back({f.t, std::string(f.s), l0, c0});
        advance(f.s.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", l0, c0);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  Token expect(Tok t) {
    if (!at(t)) fail("expected " + describe(t) + ", found " + found());
    return take();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "', found " + found());
    take();
  }
  /// Identifier usable as a variable.
  Var variable() {
    if (!at(Tok::Ident)) fail("expected variable, found " + found());
    if (is_reserved_word(peek().text)) fail("reserved word '" + peek().text + "' used as a variable");
    return take().text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  std::string found() const {
    return at(Tok::Ident) ? "'" + peek().text + "'" : describe(peek().kind);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

class MuParser {
 public:
  explicit MuParser(std::string_view text) : ts_(text) {}

  MuFormula parse() {
    auto f = formula();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected " + ts_.found());
    return f;
  }

 private:
  MuFormula formula() {
    if (ts_.at_word("mu") || ts_.at_word("nu")) {
      bool least = ts_.take().text == "mu";
      Var v = ts_.variable();
      ts_.expect(Tok::Dot);
      bound_.push_back(v);
      auto body = formula();
      bound_.pop_back();
      return least ? MuFormula::mu(std::move(v), std::move(body))
                   : MuFormula::nu(std::move(v), std::move(body));
    }
    return disj();
  }

  MuFormula disj() {
    auto f = conj();
    while (ts_.at(Tok::Or)) {
      ts_.take();
      f = MuFormula::disj(std::move(f), conj());
    }
    return f;
  }

  MuFormula conj() {
    auto f = unary();
    while (ts_.at(Tok::And)) {
      ts_.take();
      f = MuFormula::conj(std::move(f), unary());
    }
    return f;
  }

  MuFormula unary() {
    switch (ts_.peek().kind) {
      case Tok::Box: ts_.take(); return MuFormula::box(unary());
      case Tok::Dia: ts_.take(); return MuFormula::dia(unary());
      case Tok::GBox: ts_.take(); return MuFormula::gbox(unary());
      case Tok::GDia: ts_.take(); return MuFormula::gdia(unary());
      default: return atom();
    }
  }

  MuFormula atom() {
    if (ts_.at(Tok::LParen)) {
      ts_.take();
      auto f = formula();
      ts_.expect(Tok::RParen);
      return f;
    }
    if (ts_.at(Tok::Tilde)) {
      ts_.take();
      if (ts_.at(Tok::Ident) &&
          std::find(bound_.begin(), bound_.end(), ts_.peek().text) != bound_.end()) {
        ts_.fail("bound variable '" + ts_.peek().text + "' occurs under negation");
      }
      return MuFormula::neg_atom(ts_.variable());
    }
    if (ts_.at_word("true")) {
      ts_.take();
      return MuFormula::top();
    }
    if (ts_.at_word("false")) {
      ts_.take();
      return MuFormula::bot();
    }
    return MuFormula::atom(ts_.variable());
  }

  TokenStream ts_;
  std::vector<Var> bound_;
};

class NmsoParser {
 public:
  explicit NmsoParser(std::string_view text) : ts_(text) {}

  NmsoFormula parse() {
    auto f = nform();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected " + ts_.found());
    return f;
  }

 private:
  NmsoFormula nform() {
    if (ts_.at_word("exists") || ts_.at_word("forall")) {
      bool ex = ts_.take().text == "exists";
      Var v = ts_.variable();
      ts_.expect(Tok::Dot);
      auto body = nform();
      return ex ? NmsoFormula::exists(std::move(v), std::move(body))
                : NmsoFormula::forall(std::move(v), std::move(body));
    }
    return ndisj();
  }

  NmsoFormula ndisj() {
    auto f = nconj();
    while (ts_.at(Tok::Pipe)) {
      ts_.take();
      f = NmsoFormula::disj(std::move(f), nconj());
    }
    return f;
  }

  NmsoFormula nconj() {
    auto f = nneg();
    while (ts_.at(Tok::Amp)) {
      ts_.take();
      f = NmsoFormula::conj(std::move(f), nneg());
    }
    return f;
  }

  NmsoFormula nneg() {
    if (ts_.at(Tok::Tilde)) {
      ts_.take();
      return NmsoFormula::negation(nneg());
    }
    if (ts_.at(Tok::LParen)) {
      ts_.take();
      auto l = nform();
      if (ts_.at(Tok::Arrow) || ts_.at(Tok::DArrow)) {
        bool iff = ts_.take().kind == Tok::DArrow;
        auto r = nform();
        ts_.expect(Tok::RParen);
        return iff ? NmsoFormula::iff(std::move(l), std::move(r))
                   : NmsoFormula::implies(std::move(l), std::move(r));
      }
      ts_.expect(Tok::RParen);
      return l;
    }
    return natom();
  }

  NmsoFormula natom() {
    if (!ts_.at(Tok::Ident)) ts_.fail("expected atomic formula, found " + ts_.found());
    const std::string word = ts_.peek().text;
    if (word == "sr" || word == "sing" || word == "empty") {
      ts_.take();
      ts_.expect(Tok::LParen);
      Var v = ts_.variable();
      ts_.expect(Tok::RParen);
      if (word == "sr") return NmsoFormula::sr(std::move(v));
      if (word == "sing") return NmsoFormula::sing(std::move(v));
      return NmsoFormula::empty(std::move(v));
    }
    if (word == "box" || word == "eqv") {
      ts_.take();
      ts_.expect(Tok::LParen);
      Var v = ts_.variable();
      ts_.expect(Tok::Comma);
      Var w = ts_.variable();
      ts_.expect(Tok::RParen);
      return word == "box" ? NmsoFormula::box_rel(std::move(v), std::move(w))
                           : NmsoFormula::eqv(std::move(v), std::move(w));
    }
    Var v = ts_.variable();
    ts_.expect(Tok::Le);
    Var w = ts_.variable();
    return NmsoFormula::sub(std::move(v), std::move(w));
  }

  TokenStream ts_;
};

std::string mu_operand(const MuFormula& f) {
  if (f.is_binary() || f.is_binder()) return "(" + print_mu(f) + ")";
  return print_mu(f);
}

std::string nmso_operand(const NmsoFormula& f) {
  switch (f.kind()) {
    case NmsoKind::And:
    case NmsoKind::Or:
    case NmsoKind::Exists:
    case NmsoKind::Forall:
      return "(" + print_nmso(f) + ")";
    default:
      return print_nmso(f);
  }
}

}  // namespace

bool is_reserved_word(std::string_view s) {
  return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end();
}

bool is_valid_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), ident_char) && !is_reserved_word(s);
}

MuFormula parse_mu(std::string_view text) { return MuParser(text).parse(); }

std::string print_mu(const MuFormula& f) {
  switch (f.kind()) {
    case MuKind::Atom: return f.var();
    case MuKind::NegAtom: return "~" + f.var();
    case MuKind::Top: return "true";
    case MuKind::Bot: return "false";
    case MuKind::And: return mu_operand(f.left()) + " /\\ " + mu_operand(f.right());
    case MuKind::Or: return mu_operand(f.left()) + " \\/ " + mu_operand(f.right());
    case MuKind::Box: return "[]" + mu_operand(f.arg());
    case MuKind::Dia: return "<>" + mu_operand(f.arg());
    case MuKind::GBox: return "[A]" + mu_operand(f.arg());
    case MuKind::GDia: return "[E]" + mu_operand(f.arg());
    case MuKind::Mu: return "mu " + f.var() + ". " + print_mu(f.body());
    case MuKind::Nu: return "nu " + f.var() + ". " + print_mu(f.body());
  }
  return {};
}

NmsoFormula parse_nmso(std::string_view text) { return NmsoParser(text).parse(); }

std::string print_nmso(const NmsoFormula& f) {
  switch (f.kind()) {
    case NmsoKind::Sr: return "sr(" + f.var() + ")";
    case NmsoKind::Sub: return f.var() + " <= " + f.var2();
    case NmsoKind::BoxRel: return "box(" + f.var() + "," + f.var2() + ")";
    case NmsoKind::Sing: return "sing(" + f.var() + ")";
    case NmsoKind::Empty: return "empty(" + f.var() + ")";
    case NmsoKind::Eqv: return "eqv(" + f.var() + "," + f.var2() + ")";
    case NmsoKind::Not: return "~" + nmso_operand(f.body());
    case NmsoKind::And: return nmso_operand(f.left()) + " & " + nmso_operand(f.right());
    case NmsoKind::Or: return nmso_operand(f.left()) + " | " + nmso_operand(f.right());
    case NmsoKind::Implies: return "(" + print_nmso(f.left()) + " -> " + print_nmso(f.right()) + ")";
    case NmsoKind::Iff: return "(" + print_nmso(f.left()) + " <-> " + print_nmso(f.right()) + ")";
    case NmsoKind::Exists: return "exists " + f.var() + ". " + print_nmso(f.body());
    case NmsoKind::Forall: return "forall " + f.var() + ". " + print_nmso(f.body());
  }
  return {};
}

}  // namespace nbmu
