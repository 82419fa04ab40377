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

#include "linc/formula.hpp"

namespace linc {

namespace {

Type o() { return Type::prop(); }
Type oo() { return Type::arrow(o(), o()); }
Type ooo() { return Type::arrow(o(), oo()); }

Term binary(const char* name, const Term& a, const Term& b) {
  return Term::app(Term::app(Term::constant(name, ooo()), a), b);
}

Term abstract_rec(const Term& t, const std::string& name, std::uint32_t depth) {
  if (!t.has_fvars()) return t;
  switch (t.kind()) {
    case TermKind::FVar:
      return t.name() == name ? Term::bvar(depth) : t;
    case TermKind::Lam:
      return Term::lam(t.name(), t.type(), abstract_rec(t.body(), name, depth + 1));
    case TermKind::App:
      return Term::app(abstract_rec(t.fun(), name, depth), abstract_rec(t.arg(), name, depth));
    default:
      return t;
  }
}

[[noreturn]] void not_a_formula(const std::string& why) { throw Error("NotAFormula", why); }

}  // namespace

bool is_logical_constant(const std::string& name) {
  return name == conn::kTrue || name == conn::kFalse || name == conn::kAnd || name == conn::kOr ||
         name == conn::kImp || name == conn::kForall || name == conn::kExists || name == conn::kEq;
}

FormulaView view(const Term& f) {
  FormulaView v{};
  Term h = f.head();
  std::vector<Term> args = f.args();
  if (h.is(TermKind::Param)) {
    v.kind = FormulaKind::ParamAtom;
    v.head = h;
    v.args = std::move(args);
    return v;
  }
  if (!h.is(TermKind::Const)) not_a_formula("formula with a non-constant head");
  if (!h.type().valid() || !h.type().target().is_prop()) not_a_formula("head is not a predicate");
  const std::string& n = h.name();
  if (!is_logical_constant(n)) {
    v.kind = FormulaKind::Pred;
    v.head = h;
    v.args = std::move(args);
    return v;
  }
  if (n == conn::kTrue) {
    v.kind = FormulaKind::True;
  } else if (n == conn::kFalse) {
    v.kind = FormulaKind::False;
  } else if (n == conn::kAnd || n == conn::kOr || n == conn::kImp) {
    if (args.size() != 2) not_a_formula("binary connective with wrong arity");
    v.kind = n == conn::kAnd ? FormulaKind::And : n == conn::kOr ? FormulaKind::Or : FormulaKind::Imp;
    v.left = args[0];
    v.right = args[1];
  } else if (n == conn::kEq) {
    if (args.size() != 2) not_a_formula("equality with wrong arity");
    v.kind = FormulaKind::Eq;
    v.qtype = h.type().from();
    v.left = args[0];
    v.right = args[1];
  } else {
    if (args.size() != 1 || !args[0].is(TermKind::Lam)) not_a_formula("malformed quantifier");
    v.kind = n == conn::kForall ? FormulaKind::Forall : FormulaKind::Exists;
    v.qtype = args[0].type();
    v.abs = args[0];
  }
  return v;
}

FormulaKind kind_of(const Term& f) { return view(f).kind; }

Term mk_true() { return Term::constant(conn::kTrue, o()); }
Term mk_false() { return Term::constant(conn::kFalse, o()); }
Term mk_and(const Term& a, const Term& b) { return binary(conn::kAnd, a, b); }
Term mk_or(const Term& a, const Term& b) { return binary(conn::kOr, a, b); }
Term mk_imp(const Term& a, const Term& b) { return binary(conn::kImp, a, b); }

Term mk_eq(const Term& s, const Term& t) {
  Type ty = type_of(s);
  Term eq = Term::constant(conn::kEq, Type::arrow(ty, Type::arrow(ty, o())));
  return normalize(Term::app(Term::app(eq, s), t), o());
}

Term mk_forall(const Term& abs) {
  Type ty = abs.type();
  return Term::app(Term::constant(conn::kForall, Type::arrow(Type::arrow(ty, o()), o())), abs);
}

Term mk_exists(const Term& abs) {
  Type ty = abs.type();
  return Term::app(Term::constant(conn::kExists, Type::arrow(Type::arrow(ty, o()), o())), abs);
}

Term abstract_var(const Term& t, const std::string& name, const Type& type) {
  return Term::lam(std::string(strip_fresh_suffix(name)), type, abstract_rec(t, name, 0));
}

Term instance(const Term& abs, const Term& witness) {
  return normalize(Term::app(abs, witness), Type::prop());
}

}  // namespace linc
