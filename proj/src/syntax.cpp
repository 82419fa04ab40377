// Copyright 2026 The linc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linc/syntax.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace linc {

bool STerm::operator==(const STerm& o) const {
  return kind == o.kind && name == o.name && pred == o.pred && type == o.type && kids == o.kids;
}

bool SStep::operator==(const SStep& o) const {
  return rule == o.rule && index == o.index && terms == o.terms && names == o.names && with == o.with &&
         cuts == o.cuts && premises == o.premises;
}

bool SDecl::operator==(const SDecl& o) const {
  return kind == o.kind && names == o.names && type == o.type && flavor == o.flavor && head == o.head &&
         body == o.body && pred == o.pred && level == o.level && binders == o.binders && left == o.left &&
         right == o.right && script == o.script;
}

bool is_step_name(const std::string& s) {
  static const std::set<std::string> names = {
      "init",   "cL",      "wL",      "mc",      "botL",    "topR", "andL1", "andL2", "andR",
      "orL",    "orR1",    "orR2",    "impL",    "impR",    "forallL", "forallR", "existsL",
      "existsR", "eqL",    "eqR",     "IL",      "IR",      "IRp",  "CIL",   "CILp",  "CIR",
      "subst",  "unfoldR", "use"};
  return names.count(s) != 0;
}

namespace {

enum class Tok { Ident, Param, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::string pred;  // Param
  Span span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* syms[] = {":=", "->", "=>", "/\\", "\\/", "|-", ":", ".", ",", "(", ")",
                               "[",  "]",  "{",  "}",   "\\",  "=",  "@"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    Span sp{line, col};
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string name = src.substr(i, j - i);
      if (j < src.size() && src[j] == '^' && j + 1 < src.size() && ident_start(src[j + 1])) {
        size_t k = j + 1;
        while (k < src.size() && ident_char(src[k])) ++k;
        out.push_back({Tok::Param, name, src.substr(j + 1, k - j - 1), sp});
        adv(k - i);
      } else {
        out.push_back({Tok::Ident, name, "", sp});
        adv(j - i);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, src.substr(i, j - i), "", sp});
      adv(j - i);
      continue;
    }
    bool found = false;
    for (const char* s : syms) {
      size_t n = std::char_traits<char>::length(s);
      if (src.compare(i, n, s) == 0) {
        out.push_back({Tok::Sym, s, "", sp});
        adv(n);
        found = true;
        break;
      }
    }
    if (!found) throw SyntaxError("ParseError", std::string("unexpected character '") + c + "'", sp);
  }
  out.push_back({Tok::End, "", "", Span{line, col}});
  return out;
}

const std::set<std::string> kKeywords = {"kind", "type", "define", "level", "invariant", "goal", "proof"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_sym(const char* s, size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool at_word(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string what = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError("ParseError", msg + ", found " + what, t.span);
  }
  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  void expect_word(const char* s) {
    if (!at_word(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    return toks_[pos_++].text;
  }
  int number() {
    if (peek().kind != Tok::Number) fail("expected a number");
    return std::stoi(toks_[pos_++].text);
  }

  // ------------------------------------------------------------------ types

  Type type() {
    Type a = type_atom();
    if (at_sym("->")) {
      ++pos_;
      return Type::arrow(a, type());
    }
    return a;
  }
  Type type_atom() {
    if (at_sym("(")) {
      ++pos_;
      Type t = type();
      expect_sym(")");
      return t;
    }
    std::string n = ident("a type");
    return n == "o" ? Type::prop() : Type::base(n);
  }

  // ------------------------------------------------------------------ terms

  bool at_binder() const { return at_sym("\\") || at_word("forall") || at_word("exists"); }

  STerm term() {
    if (at_binder()) return binder();
    Span sp = peek().span;
    STerm l = disj();
    if (at_sym("=>")) {
      ++pos_;
      STerm r = term();
      return node(STerm::Kind::Imp, sp, {std::move(l), std::move(r)});
    }
    return l;
  }

  STerm binder() {
    Span sp = peek().span;
    if (at_sym("\\")) {
      ++pos_;
      std::string x = ident("a variable");
      std::optional<Type> ty;
      if (at_sym(":")) {
        ++pos_;
        ty = type();
      }
      expect_sym(".");
      STerm b = term();
      STerm t = node(STerm::Kind::Lam, sp, {std::move(b)});
      t.name = x;
      t.type = ty;
      return t;
    }
    STerm::Kind k = at_word("forall") ? STerm::Kind::Forall : STerm::Kind::Exists;
    ++pos_;
    std::vector<std::pair<std::string, std::optional<Type>>> vars;
    while (!at_sym(",")) {
      if (at_sym("(")) {
        ++pos_;
        std::vector<std::string> group;
        while (!at_sym(":")) group.push_back(ident("a variable"));
        if (group.empty()) fail("expected a variable");
        ++pos_;
        Type ty = type();
        expect_sym(")");
        for (auto& g : group) vars.emplace_back(g, ty);
      } else {
        vars.emplace_back(ident("a variable or ','"), std::nullopt);
      }
    }
    if (vars.empty()) fail("expected a variable");
    ++pos_;
    STerm body = term();
    for (size_t i = vars.size(); i-- > 0;) {
      STerm q = node(k, sp, {std::move(body)});
      q.name = vars[i].first;
      q.type = vars[i].second;
      body = std::move(q);
    }
    return body;
  }

  STerm right_operand(STerm (Parser::*next)()) { return at_binder() ? binder() : (this->*next)(); }

  STerm disj() {
    Span sp = peek().span;
    STerm l = conj();
    if (at_sym("\\/")) {
      ++pos_;
      STerm r = right_operand(&Parser::disj);
      return node(STerm::Kind::Or, sp, {std::move(l), std::move(r)});
    }
    return l;
  }
  STerm conj() {
    Span sp = peek().span;
    STerm l = equality();
    if (at_sym("/\\")) {
      ++pos_;
      STerm r = right_operand(&Parser::conj);
      return node(STerm::Kind::And, sp, {std::move(l), std::move(r)});
    }
    return l;
  }
  STerm equality() {
    Span sp = peek().span;
    STerm l = application();
    if (at_sym("=")) {
      ++pos_;
      STerm r = application();
      return node(STerm::Kind::Eq, sp, {std::move(l), std::move(r)});
    }
    return l;
  }
  bool at_atom() const {
    if (peek().kind == Tok::Param) return true;
    if (peek().kind == Tok::Ident)
      return !kKeywords.count(peek().text) && peek().text != "forall" && peek().text != "exists" &&
             peek().text != "with";
    return at_sym("(");
  }
  STerm application() {
    Span sp = peek().span;
    STerm f = atom();
    while (at_atom()) f = node(STerm::Kind::App, sp, {std::move(f), atom()});
    return f;
  }
  STerm atom() {
    const Token& t = peek();
    if (t.kind == Tok::Param) {
      ++pos_;
      STerm a = node(STerm::Kind::Param, t.span, {});
      a.name = t.text;
      a.pred = t.pred;
      return a;
    }
    if (at_sym("(")) {
      ++pos_;
      STerm a = term();
      expect_sym(")");
      return a;
    }
    if (!at_atom()) fail("expected a term");
    ++pos_;
    if (t.text == "true") return node(STerm::Kind::True, t.span, {});
    if (t.text == "false") return node(STerm::Kind::False, t.span, {});
    STerm a = node(STerm::Kind::Ident, t.span, {});
    a.name = t.text;
    return a;
  }

  static STerm node(STerm::Kind k, Span sp, std::vector<STerm> kids) {
    STerm t;
    t.kind = k;
    t.span = sp;
    t.kids = std::move(kids);
    return t;
  }

  std::pair<std::vector<STerm>, STerm> sequent() {
    std::vector<STerm> left;
    if (!at_sym("|-")) {
      left.push_back(term());
      while (at_sym(",")) {
        ++pos_;
        left.push_back(term());
      }
    }
    expect_sym("|-");
    STerm right = term();
    return {std::move(left), std::move(right)};
  }

  // ----------------------------------------------------------------- scripts

  void opt_index(SStep& s) {
    if (at_sym("[") && peek(1).kind == Tok::Number) {
      ++pos_;
      s.index = number();
      expect_sym("]");
    }
  }
  void opt_names(SStep& s) {
    if (!at_sym("[")) return;
    ++pos_;
    while (!at_sym("]")) s.names.push_back(ident("a name"));
    ++pos_;
  }

  SStep step() {
    SStep s;
    s.span = peek().span;
    if (peek().kind != Tok::Ident || !is_step_name(peek().text)) fail("expected a rule name");
    s.rule = toks_[pos_++].text;
    const std::string& r = s.rule;
    if (r == "init" || r == "cL" || r == "wL" || r == "botL" || r == "andL1" || r == "andL2" || r == "orL" ||
        r == "impL" || r == "CILp") {
      opt_index(s);
    } else if (r == "forallL") {
      opt_index(s);
      s.terms.push_back(atom());
    } else if (r == "forallR") {
      s.names.push_back(ident("an eigenvariable"));
    } else if (r == "existsL") {
      opt_index(s);
      s.names.push_back(ident("an eigenvariable"));
    } else if (r == "existsR") {
      s.terms.push_back(atom());
    } else if (r == "eqL") {
      opt_index(s);
      if (at_word("with")) {
        ++pos_;
        do {
          if (at_sym(",")) ++pos_;
          std::string x = ident("a variable");
          expect_sym(":=");
          s.with.emplace_back(x, atom());
        } while (at_sym(","));
      }
    } else if (r == "IL") {
      opt_index(s);
      s.terms.push_back(atom());
      opt_names(s);
    } else if (r == "CIR") {
      s.terms.push_back(atom());
      opt_names(s);
    } else if (r == "IR") {
      opt_names(s);
    } else if (r == "CIL") {
      opt_index(s);
      opt_names(s);
    } else if (r == "mc") {
      if (!at_sym("(")) fail("expected a cut formula '(B @ i ...)'");
      while (at_sym("(")) {
        ++pos_;
        SCut c;
        c.formula = term();
        if (at_sym("@")) {
          ++pos_;
          while (peek().kind == Tok::Number) c.positions.push_back(number());
        }
        expect_sym(")");
        s.cuts.push_back(std::move(c));
      }
    } else if (r == "use") {
      s.names.push_back(ident("a proof name"));
      while (at_atom()) s.terms.push_back(atom());
    }
    while (at_sym("{")) {
      ++pos_;
      s.premises.push_back(step());
      expect_sym("}");
    }
    if (at_sym(".") && peek(1).kind == Tok::Ident && is_step_name(peek(1).text)) {
      ++pos_;
      s.premises.push_back(step());
    }
    return s;
  }

  // ------------------------------------------------------------ declarations

  std::vector<SBinder> binders() {
    std::vector<SBinder> out;
    while (at_sym("(")) {
      ++pos_;
      std::vector<std::string> group;
      while (!at_sym(":")) group.push_back(ident("a variable"));
      ++pos_;
      Type ty = type();
      expect_sym(")");
      for (auto& g : group) out.push_back({g, ty});
    }
    return out;
  }

  SDecl decl() {
    SDecl d;
    d.span = peek().span;
    std::string kw = ident("a declaration");
    if (kw == "kind") {
      d.kind = SDecl::Kind::Kind;
      while (!at_sym(":")) d.names.push_back(ident("a type name"));
      if (d.names.empty()) fail("expected a type name");
      ++pos_;
      expect_word("type");
    } else if (kw == "type") {
      d.kind = SDecl::Kind::Type;
      while (!at_sym(":")) d.names.push_back(ident("a constant name"));
      if (d.names.empty()) fail("expected a constant name");
      ++pos_;
      d.type = type();
    } else if (kw == "define") {
      d.kind = SDecl::Kind::Define;
      std::string fl = ident("'mu' or 'nu'");
      if (fl != "mu" && fl != "nu") {
        --pos_;
        fail("expected 'mu' or 'nu'");
      }
      d.flavor = fl == "mu" ? Fixpoint::Mu : Fixpoint::Nu;
      d.names.push_back(ident("a predicate name"));
      expect_sym(":");
      d.type = type();
      expect_sym(":=");
      std::string h = ident("the clause head");
      if (h != d.names[0]) {
        --pos_;
        fail("clause head must be '" + d.names[0] + "'");
      }
      while (!at_sym(":=")) d.head.push_back(ident("a head variable or ':='"));
      ++pos_;
      d.body = term();
    } else if (kw == "level") {
      d.kind = SDecl::Kind::Level;
      d.pred = ident("a predicate name");
      d.level = number();
    } else if (kw == "invariant") {
      d.kind = SDecl::Kind::Invariant;
      d.names.push_back(ident("an invariant name"));
      expect_word("for");
      d.pred = ident("a predicate name");
      expect_sym(":=");
      d.body = term();
    } else if (kw == "goal" || kw == "proof") {
      d.kind = kw == "goal" ? SDecl::Kind::Goal : SDecl::Kind::Proof;
      d.names.push_back(ident("a name"));
      d.binders = binders();
      expect_sym(":");
      auto [l, r] = sequent();
      d.left = std::move(l);
      d.right = std::move(r);
      if (d.kind == SDecl::Kind::Proof) {
        expect_sym(":=");
        d.script = step();
      }
    } else {
      --pos_;
      fail("expected a declaration");
    }
    expect_sym(".");
    return d;
  }

  SourceFile file() {
    SourceFile f;
    while (!at_end()) f.decls.push_back(decl());
    return f;
  }

  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// ------------------------------------------------------------------ printing

std::string paren(bool p, const std::string& s) { return p ? "(" + s + ")" : s; }

std::string print_t(const STerm& t, int prec) {
  using K = STerm::Kind;
  switch (t.kind) {
    case K::Ident: return t.name;
    case K::Param: return t.name + "^" + t.pred;
    case K::True: return "true";
    case K::False: return "false";
    case K::App: return paren(prec > 4, print_t(t.kids[0], 4) + " " + print_t(t.kids[1], 5));
    case K::Lam:
      return paren(prec > 0, "\\" + t.name + (t.type ? " : " + t.type->str() : "") + ". " + print_t(t.kids[0], 0));
    case K::Forall:
    case K::Exists: {
      std::string q = t.kind == K::Forall ? "forall " : "exists ";
      std::string b = t.type ? "(" + t.name + " : " + t.type->str() + ")" : t.name;
      return paren(prec > 0, q + b + ", " + print_t(t.kids[0], 0));
    }
    case K::Imp: return paren(prec > 0, print_t(t.kids[0], 1) + " => " + print_t(t.kids[1], 0));
    case K::Or: return paren(prec > 1, print_t(t.kids[0], 2) + " \\/ " + print_t(t.kids[1], 1));
    case K::And: return paren(prec > 2, print_t(t.kids[0], 3) + " /\\ " + print_t(t.kids[1], 2));
    case K::Eq: return paren(prec > 3, print_t(t.kids[0], 4) + " = " + print_t(t.kids[1], 4));
  }
  return "?";
}

std::string print_seq(const std::vector<STerm>& l, const STerm& r) {
  std::string out;
  for (size_t i = 0; i < l.size(); ++i) out += (i ? ", " : "") + print_t(l[i], 0);
  return out + (out.empty() ? "|- " : " |- ") + print_t(r, 0);
}

}  // namespace

std::string print_sterm(const STerm& t) { return print_t(t, 0); }

std::string print_step(const SStep& s, int indent) {
  std::string ind(static_cast<size_t>(indent), ' ');
  std::string out = s.rule;
  const std::string& r = s.rule;
  auto idx = [&] {
    if (s.index) out += " [" + std::to_string(*s.index) + "]";
  };
  auto names_br = [&] {
    if (s.names.empty()) return;
    out += " [";
    for (size_t i = 0; i < s.names.size(); ++i) out += (i ? " " : "") + s.names[i];
    out += "]";
  };
  if (r == "forallL" || r == "IL") {
    idx();
    out += " " + print_t(s.terms.at(0), 5);
    if (r == "IL") names_br();
  } else if (r == "forallR" || r == "existsL") {
    idx();
    out += " " + s.names.at(0);
  } else if (r == "existsR") {
    out += " " + print_t(s.terms.at(0), 5);
  } else if (r == "CIR") {
    out += " " + print_t(s.terms.at(0), 5);
    names_br();
  } else if (r == "IR" || r == "CIL") {
    idx();
    names_br();
  } else if (r == "eqL") {
    idx();
    for (size_t i = 0; i < s.with.size(); ++i)
      out += (i ? ", " : " with ") + s.with[i].first + " := " + print_t(s.with[i].second, 5);
  } else if (r == "mc") {
    for (const auto& c : s.cuts) {
      out += " (" + print_t(c.formula, 0);
      if (!c.positions.empty()) {
        out += " @";
        for (int p : c.positions) out += " " + std::to_string(p);
      }
      out += ")";
    }
  } else if (r == "use") {
    out += " " + s.names.at(0);
    for (const auto& t : s.terms) out += " " + print_t(t, 5);
  } else {
    idx();
  }
  for (size_t i = 0; i + 1 < s.premises.size(); ++i)
    out += " {\n" + ind + "  " + print_step(s.premises[i], indent + 2) + "\n" + ind + "}";
  if (!s.premises.empty()) out += ".\n" + ind + print_step(s.premises.back(), indent);
  return out;
}

std::string print_source(const SourceFile& f) {
  std::ostringstream os;
  for (const auto& d : f.decls) {
    switch (d.kind) {
      case SDecl::Kind::Kind:
      case SDecl::Kind::Type: {
        os << (d.kind == SDecl::Kind::Kind ? "kind" : "type");
        for (const auto& n : d.names) os << " " << n;
        os << " : " << (d.kind == SDecl::Kind::Kind ? "type" : d.type.str()) << ".\n";
        break;
      }
      case SDecl::Kind::Define: {
        os << "define " << (d.flavor == Fixpoint::Mu ? "mu " : "nu ") << d.names[0] << " : " << d.type.str()
           << " :=\n  " << d.names[0];
        for (const auto& h : d.head) os << " " << h;
        os << " := " << print_t(d.body, 0) << ".\n";
        break;
      }
      case SDecl::Kind::Level:
        os << "level " << d.pred << " " << d.level << ".\n";
        break;
      case SDecl::Kind::Invariant:
        os << "invariant " << d.names[0] << " for " << d.pred << " := " << print_t(d.body, 0) << ".\n";
        break;
      case SDecl::Kind::Goal:
      case SDecl::Kind::Proof: {
        os << (d.kind == SDecl::Kind::Goal ? "goal " : "proof ") << d.names[0];
        for (const auto& b : d.binders) os << " (" << b.name << " : " << b.type.str() << ")";
        os << " : " << print_seq(d.left, d.right);
        if (d.kind == SDecl::Kind::Proof) os << " :=\n  " << print_step(d.script, 2);
        os << ".\n";
        break;
      }
    }
  }
  return os.str();
}

SourceFile parse_source(const std::string& text) {
  Parser p(lex(text));
  return p.file();
}

SourceFile parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_source(ss.str());
}

std::pair<std::vector<STerm>, STerm> parse_sequent_text(const std::string& text) {
  Parser p(lex(text));
  auto s = p.sequent();
  p.finish();
  return s;
}

STerm parse_term_text(const std::string& text) {
  Parser p(lex(text));
  STerm t = p.term();
  p.finish();
  return t;
}

SStep parse_script_text(const std::string& text) {
  Parser p(lex(text));
  SStep s = p.step();
  p.finish();
  return s;
}

}  // namespace linc
