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

#include "linc/kernel.hpp"

#include <algorithm>
#include <functional>

#include "linc/printer.hpp"
#include "linc/unify.hpp"

namespace linc {

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& msg) { throw Error(code, msg); }

const Term& principal(const Sequent& s, const Payload& p, FormulaKind want, const char* rule) {
  if (p.index < 0 || static_cast<size_t>(p.index) >= s.left.size())
    fail("BadIndex", std::string(rule) + ": no formula at position " + std::to_string(p.index));
  const Term& f = s.left[static_cast<size_t>(p.index)];
  if (kind_of(f) != want) fail("WrongPrincipal", std::string(rule) + ": " + show(f) + " has the wrong shape");
  return f;
}

void expect_right(const Sequent& s, FormulaKind want, const char* rule) {
  if (kind_of(s.right) != want)
    fail("WrongPrincipal", std::string(rule) + ": " + show(s.right) + " has the wrong shape");
}

const DefClause& clause(const DefTable& d, const Term& head, Fixpoint flavor, const char* rule) {
  std::string pred = head.is(TermKind::Param) ? head.param().pred : head.name();
  const DefClause* c = d.find(pred);
  if (!c) fail("UnknownDefinition", std::string(rule) + ": " + pred + " has no definition");
  if (c->flavor != flavor)
    fail("WrongFixpoint", std::string(rule) + ": " + pred + " is " +
                              (c->inductive() ? "inductive" : "co-inductive"));
  if (head.type() != c->type) fail("IllTyped", std::string(rule) + ": type of " + pred + " disagrees");
  return *c;
}

void check_eigen(const Sequent& s, const Term& y, const Type& ty, const char* rule) {
  if (!y.valid() || !y.is(TermKind::FVar)) fail("BadEigenvariable", std::string(rule) + ": missing eigenvariable");
  if (y.type() != ty)
    fail("IllTypedWitness", std::string(rule) + ": eigenvariable of type " + y.type().str() + ", expected " + ty.str());
  if (s.free_vars().count(y.name()))
    fail("NotFresh", std::string(rule) + ": " + y.name() + " occurs free in the conclusion");
}

void check_witness(const Term& t, const Type& ty, const char* rule) {
  if (!t.valid()) fail("IllTypedWitness", std::string(rule) + ": missing witness");
  if (t.loose_bound() != 0) fail("IllTypedWitness", std::string(rule) + ": witness is not closed");
  Type actual;
  try {
    actual = type_of(t);
  } catch (const Error& e) {
    fail("IllTypedWitness", std::string(rule) + ": " + e.what());
  }
  if (actual != ty)
    fail("IllTypedWitness", std::string(rule) + ": witness " + show(t) + " has type " + actual.str() +
                                ", expected " + ty.str());
  if (normalize(t, ty) != t) fail("IllTypedWitness", std::string(rule) + ": witness is not canonical");
}

Term param_term(const Param& x, const DefClause& c) { return Term::param(x, c.type); }

void check_new_param(const Sequent& s, const Payload& p, const DefClause& c, const char* rule) {
  if (!p.param) fail("MissingParameter", std::string(rule) + ": no parameter given");
  if (p.param->pred != c.pred)
    fail("WrongParameter", std::string(rule) + ": " + p.param->str() + " does not belong to " + c.pred);
  if (s.params().count(*p.param))
    fail("NotFresh", std::string(rule) + ": parameter " + p.param->str() + " occurs in the conclusion");
}

// Invariant S with its eigenvariables y⃗; returns S y⃗.
Term check_invariant(const Sequent& s, const Payload& p, const DefClause& c, const char* rule) {
  if (!p.invariant.valid()) fail("MissingInvariant", std::string(rule) + ": no invariant given");
  check_witness(p.invariant, c.type, rule);
  if (!free_vars(p.invariant).empty())
    fail("OpenInvariant", std::string(rule) + ": invariant " + show(p.invariant) + " has free variables");
  std::vector<Type> at = c.type.args();
  if (p.vars.size() != at.size())
    fail("BadEigenvariable", std::string(rule) + ": expected " + std::to_string(at.size()) + " variables");
  auto fv = s.free_vars();
  for (size_t i = 0; i < at.size(); ++i) {
    check_eigen(s, p.vars[i], at[i], rule);
    for (size_t j = 0; j < i; ++j)
      if (p.vars[j].name() == p.vars[i].name())
        fail("BadEigenvariable", std::string(rule) + ": repeated variable " + p.vars[i].name());
  }
  return normalize(Term::apps(p.invariant, p.vars), Type::prop());
}

std::vector<Term> apply_all(const std::vector<Term>& v, const Subst& s) {
  std::vector<Term> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(apply(f, s));
  return out;
}

void check_mgu(const Sequent& concl, const Term& s, const Term& t, const Subst& sigma) {
  std::optional<Subst> base;
  base = unify(s, t);
  if (!base) fail("NotUnifiable", "eqL: " + show(s) + " and " + show(t) + " have no unifier");
  if (apply(s, sigma) != apply(t, sigma)) fail("NotAnMgu", "eqL: substitution does not unify");
  std::map<std::string, Type> st;
  collect_free_vars(s, st);
  collect_free_vars(t, st);
  for (const auto& [x, _] : sigma)
    if (!st.count(x)) fail("NotAnMgu", "eqL: " + x + " is not a variable of the equation");
  auto fv = concl.free_vars();
  for (const auto& [y, _] : sigma.range_vars())
    if (!st.count(y) && fv.count(y))
      fail("NotFresh", "eqL: " + y + " in the unifier's range occurs in the conclusion");
  // most general: the canonical unifier factors through it
  TermPairs pairs;
  auto dom = st;
  for (const auto& [x, e] : sigma) dom.emplace(x, e.type);
  for (const auto& [y, ty] : dom) {
    Term v = Term::fvar(y, ty);
    pairs.emplace_back(apply(v, sigma), apply(v, *base));
  }
  if (!match_all(pairs)) fail("NotAnMgu", "eqL: unifier " + show(sigma) + " is not most general");
}

}  // namespace

std::vector<Sequent> expected_premises(const DefTable& d, const Sequent& s, Rule rule, const Payload& p) {
  const char* rn = rule_name(rule);
  const Term& C = s.right;
  auto k = static_cast<size_t>(p.index);
  switch (rule) {
    case Rule::Init:
      if (s.left.size() != 1 || s.left[0] != C) fail("NotAxiom", "init needs exactly B |- B");
      return {};
    case Rule::CL: {
      if (p.index < 0 || k >= s.left.size()) fail("BadIndex", "cL: no formula at position " + std::to_string(p.index));
      auto l = s.left;
      l.push_back(s.left[k]);
      return {Sequent{l, C}};
    }
    case Rule::WL:
      if (p.index < 0 || k >= s.left.size()) fail("BadIndex", "wL: no formula at position " + std::to_string(p.index));
      return {Sequent{erase_at(s.left, k), C}};
    case Rule::BotL:
      principal(s, p, FormulaKind::False, rn);
      return {};
    case Rule::TopR:
      expect_right(s, FormulaKind::True, rn);
      return {};
    case Rule::AndL1:
    case Rule::AndL2: {
      FormulaView v = view(principal(s, p, FormulaKind::And, rn));
      return {Sequent{replace_at(s.left, k, rule == Rule::AndL1 ? v.left : v.right), C}};
    }
    case Rule::AndR: {
      expect_right(s, FormulaKind::And, rn);
      FormulaView v = view(C);
      return {Sequent{s.left, v.left}, Sequent{s.left, v.right}};
    }
    case Rule::OrL: {
      FormulaView v = view(principal(s, p, FormulaKind::Or, rn));
      return {Sequent{replace_at(s.left, k, v.left), C}, Sequent{replace_at(s.left, k, v.right), C}};
    }
    case Rule::OrR1:
    case Rule::OrR2: {
      expect_right(s, FormulaKind::Or, rn);
      FormulaView v = view(C);
      return {Sequent{s.left, rule == Rule::OrR1 ? v.left : v.right}};
    }
    case Rule::ImpL: {
      FormulaView v = view(principal(s, p, FormulaKind::Imp, rn));
      return {Sequent{erase_at(s.left, k), v.left}, Sequent{replace_at(s.left, k, v.right), C}};
    }
    case Rule::ImpR: {
      expect_right(s, FormulaKind::Imp, rn);
      FormulaView v = view(C);
      auto l = s.left;
      l.push_back(v.left);
      return {Sequent{l, v.right}};
    }
    case Rule::ForallL: {
      FormulaView v = view(principal(s, p, FormulaKind::Forall, rn));
      check_witness(p.term, v.qtype, rn);
      return {Sequent{replace_at(s.left, k, instance(v.abs, p.term)), C}};
    }
    case Rule::ExistsL: {
      FormulaView v = view(principal(s, p, FormulaKind::Exists, rn));
      check_eigen(s, p.term, v.qtype, rn);
      return {Sequent{replace_at(s.left, k, instance(v.abs, p.term)), C}};
    }
    case Rule::ForallR: {
      expect_right(s, FormulaKind::Forall, rn);
      FormulaView v = view(C);
      check_eigen(s, p.term, v.qtype, rn);
      return {Sequent{s.left, instance(v.abs, p.term)}};
    }
    case Rule::ExistsR: {
      expect_right(s, FormulaKind::Exists, rn);
      FormulaView v = view(C);
      check_witness(p.term, v.qtype, rn);
      return {Sequent{s.left, instance(v.abs, p.term)}};
    }
    case Rule::EqR: {
      expect_right(s, FormulaKind::Eq, rn);
      FormulaView v = view(C);
      if (v.left != v.right) fail("NotReflexive", "eqR: " + show(C) + " is not an instance of t = t");
      return {};
    }
    case Rule::EqL: {
      FormulaView v = view(principal(s, p, FormulaKind::Eq, rn));
      if (!p.mgu) {
        if (unify(v.left, v.right))
          fail("MissingPremise", "eqL: " + show(v.left) + " and " + show(v.right) + " are unifiable");
        return {};
      }
      check_mgu(s, v.left, v.right, *p.mgu);
      return {Sequent{apply_all(erase_at(s.left, k), *p.mgu), apply(C, *p.mgu)}};
    }
    case Rule::IL: {
      FormulaView v = view(principal(s, p, FormulaKind::Pred, rn));
      const DefClause& c = clause(d, v.head, Fixpoint::Mu, rn);
      Term sy = check_invariant(s, p, c, rn);
      Term st = normalize(Term::apps(p.invariant, v.args), Type::prop());
      return {Sequent{{d.unfold(c.pred, p.invariant, p.vars)}, sy}, Sequent{replace_at(s.left, k, st), C}};
    }
    case Rule::IR: {
      expect_right(s, FormulaKind::Pred, rn);
      FormulaView v = view(C);
      const DefClause& c = clause(d, v.head, Fixpoint::Mu, rn);
      check_new_param(s, p, c, rn);
      return {Sequent{s.left, d.unfold(c.pred, param_term(*p.param, c), v.args)}};
    }
    case Rule::IRp: {
      expect_right(s, FormulaKind::ParamAtom, rn);
      FormulaView v = view(C);
      const DefClause& c = clause(d, v.head, Fixpoint::Mu, rn);
      return {Sequent{s.left, d.unfold(c.pred, v.head, v.args)}};
    }
    case Rule::CIL: {
      FormulaView v = view(principal(s, p, FormulaKind::Pred, rn));
      const DefClause& c = clause(d, v.head, Fixpoint::Nu, rn);
      check_new_param(s, p, c, rn);
      return {Sequent{replace_at(s.left, k, d.unfold(c.pred, param_term(*p.param, c), v.args)), C}};
    }
    case Rule::CILp: {
      FormulaView v = view(principal(s, p, FormulaKind::ParamAtom, rn));
      const DefClause& c = clause(d, v.head, Fixpoint::Nu, rn);
      return {Sequent{replace_at(s.left, k, d.unfold(c.pred, v.head, v.args)), C}};
    }
    case Rule::CIR: {
      expect_right(s, FormulaKind::Pred, rn);
      FormulaView v = view(C);
      const DefClause& c = clause(d, v.head, Fixpoint::Nu, rn);
      Term sy = check_invariant(s, p, c, rn);
      Term st = normalize(Term::apps(p.invariant, v.args), Type::prop());
      return {Sequent{s.left, st}, Sequent{{sy}, d.unfold(c.pred, p.invariant, p.vars)}};
    }
    case Rule::Subst:
      return {s};
    case Rule::MC:
      break;
  }
  fail("InternalError", "mc premises are not determined by the conclusion");
}

namespace {

void check_mc(const Derivation& n, std::vector<Violation>& out) {
  auto bad = [&](std::string code, std::string msg) { out.push_back(Violation{{}, std::move(code), std::move(msg)}); };
  const auto& kids = n.children();
  const auto& cuts = n.payload().cuts;
  if (kids.size() < 2) {
    bad("EmptyMulticut", "mc needs at least one cut formula");
    return;
  }
  size_t m = kids.size() - 1;
  const Sequent& main = kids.back().concl();
  if (cuts.size() != m) {
    bad("CutMismatch", "mc lists " + std::to_string(cuts.size()) + " cut positions for " + std::to_string(m) + " cut premises");
    return;
  }
  std::vector<bool> used(main.left.size(), false);
  std::vector<Term> expect;
  for (size_t i = 0; i < m; ++i) {
    int c = cuts[i];
    if (c < 0 || static_cast<size_t>(c) >= main.left.size() || used[static_cast<size_t>(c)]) {
      bad("CutMismatch", "mc: invalid cut position " + std::to_string(c));
      return;
    }
    used[static_cast<size_t>(c)] = true;
    if (main.left[static_cast<size_t>(c)] != kids[i].concl().right) {
      bad("CutMismatch", "mc: premise " + std::to_string(i) + " proves " + show(kids[i].concl().right) +
                             " but the cut formula is " + show(main.left[static_cast<size_t>(c)]));
    }
    expect.insert(expect.end(), kids[i].concl().left.begin(), kids[i].concl().left.end());
  }
  for (size_t j = 0; j < main.left.size(); ++j)
    if (!used[j]) expect.push_back(main.left[j]);
  if (!same_sequent(n.concl(), Sequent{expect, main.right}))
    bad("PremiseMismatch", "mc: conclusion " + show(n.concl()) + " does not combine the premises " +
                               show(Sequent{expect, main.right}));
}

}  // namespace

std::vector<Violation> check_node(const DefTable& d, const Derivation& n) {
  std::vector<Violation> out;
  if (n.rule() == Rule::MC) {
    check_mc(n, out);
    return out;
  }
  std::vector<Sequent> want;
  try {
    want = expected_premises(d, n.concl(), n.rule(), n.payload());
  } catch (const Error& e) {
    out.push_back(Violation{{}, e.code(), e.what()});
    return out;
  }
  if (want.size() != n.children().size()) {
    out.push_back(Violation{{}, "ArityMismatch",
                            std::string(rule_name(n.rule())) + " expects " + std::to_string(want.size()) +
                                " premises, found " + std::to_string(n.children().size())});
    return out;
  }
  for (size_t i = 0; i < want.size(); ++i) {
    if (same_sequent(want[i], n.child(i).concl())) continue;
    bool inv = (n.rule() == Rule::IL && i == 0) || (n.rule() == Rule::CIR && i == 1);
    out.push_back(Violation{{}, inv ? "InvariantMismatch" : "PremiseMismatch",
                            std::string(rule_name(n.rule())) + ": premise " + std::to_string(i) + " proves " +
                                show(n.child(i).concl()) + ", expected " + show(want[i])});
  }
  return out;
}

CheckReport check(const DefTable& d, const Derivation& pi) {
  CheckReport r;
  std::vector<int> path;
  std::function<void(const Derivation&)> go = [&](const Derivation& n) {
    for (auto v : check_node(d, n)) {
      v.path = path;
      r.violations.push_back(std::move(v));
    }
    for (size_t i = 0; i < n.children().size(); ++i) {
      path.push_back(static_cast<int>(i));
      go(n.child(i));
      path.pop_back();
    }
  };
  try {
    for (const auto& f : pi.concl().left)
      if (type_of(f) != Type::prop()) r.violations.push_back(Violation{{}, "IllFormedSequent", show(f) + " is not a formula"});
    if (type_of(pi.concl().right) != Type::prop())
      r.violations.push_back(Violation{{}, "IllFormedSequent", show(pi.concl().right) + " is not a formula"});
    go(pi);
  } catch (const Error& e) {
    r.violations.push_back(Violation{path, e.code(), e.what()});
  }
  r.ok = r.violations.empty();
  return r;
}

Derivation derive(const DefTable& d, Sequent concl, Rule rule, Payload p, std::vector<Derivation> children) {
  Derivation n = Derivation::make(std::move(concl), rule, std::move(p), std::move(children));
  auto v = check_node(d, n);
  if (!v.empty()) throw Error(v.front().code, v.front().message);
  return n;
}

Derivation identity(const Term& b) {
  return Derivation::make(Sequent{{b}, b}, Rule::Init, Payload{}, {});
}

Derivation make_mc(const DefTable& d, std::vector<Derivation> cut_premises, Derivation main, std::vector<int> cuts) {
  Sequent concl;
  std::vector<bool> cut(main.concl().left.size(), false);
  for (int c : cuts)
    if (c >= 0 && static_cast<size_t>(c) < cut.size()) cut[static_cast<size_t>(c)] = true;
  for (const auto& pr : cut_premises)
    concl.left.insert(concl.left.end(), pr.concl().left.begin(), pr.concl().left.end());
  for (size_t j = 0; j < cut.size(); ++j)
    if (!cut[j]) concl.left.push_back(main.concl().left[j]);
  concl.right = main.concl().right;
  Payload p;
  p.cuts = std::move(cuts);
  cut_premises.push_back(std::move(main));
  return derive(d, std::move(concl), Rule::MC, std::move(p), std::move(cut_premises));
}

namespace {

Term need_formula(const Payload& p, Rule r) {
  if (!p.formula.valid())
    fail("NeedsFormula", std::string(rule_name(r)) + ": the conclusion needs payload.formula");
  return p.formula;
}

}  // namespace

Derivation apply_rule(const DefTable& d, Rule rule, Payload p, std::vector<Derivation> premises,
                      const std::optional<Sequent>& goal) {
  if (goal) return derive(d, *goal, rule, std::move(p), std::move(premises));
  if (rule == Rule::MC) {
    if (premises.size() < 2) fail("EmptyMulticut", "mc needs at least one cut formula");
    Derivation main = premises.back();
    premises.pop_back();
    return make_mc(d, std::move(premises), std::move(main), p.cuts);
  }
  auto k = static_cast<size_t>(p.index);
  auto need_premises = [&](size_t n) {
    if (premises.size() != n)
      fail("ArityMismatch", std::string(rule_name(rule)) + " expects " + std::to_string(n) + " premises");
  };
  auto left_of = [&](size_t i) -> const std::vector<Term>& { return premises[i].concl().left; };
  auto right_of = [&](size_t i) -> const Term& { return premises[i].concl().right; };
  auto in_range = [&](const std::vector<Term>& l, size_t extra) {
    if (p.index < 0 || k >= l.size() + extra) fail("BadIndex", std::string(rule_name(rule)) + ": bad position");
  };
  Sequent s;
  switch (rule) {
    case Rule::Init: {
      Term b = need_formula(p, rule);
      s = Sequent{{b}, b};
      break;
    }
    case Rule::TopR:
      s = Sequent{{}, mk_true()};
      break;
    case Rule::EqR:
      s = Sequent{{}, need_formula(p, rule)};
      break;
    case Rule::BotL:
      s = Sequent{{mk_false()}, need_formula(p, rule)};
      p.index = 0;
      break;
    case Rule::EqL:
      fail("NeedsGoal", "eqL: the conclusion cannot be inferred from the premises");
    case Rule::CL: {
      need_premises(1);
      auto l = left_of(0);
      if (l.empty()) fail("BadIndex", "cL: empty premise");
      l.pop_back();
      s = Sequent{l, right_of(0)};
      break;
    }
    case Rule::WL: {
      need_premises(1);
      auto l = left_of(0);
      in_range(l, 1);
      l.insert(l.begin() + static_cast<std::ptrdiff_t>(k), need_formula(p, rule));
      s = Sequent{l, right_of(0)};
      break;
    }
    case Rule::AndL1: case Rule::AndL2: case Rule::ForallL: case Rule::ExistsL:
    case Rule::CIL: case Rule::CILp: {
      need_premises(1);
      in_range(left_of(0), 0);
      s = Sequent{replace_at(left_of(0), k, need_formula(p, rule)), right_of(0)};
      break;
    }
    case Rule::OrL: {
      need_premises(2);
      in_range(left_of(0), 0);
      s = Sequent{replace_at(left_of(0), k, need_formula(p, rule)), right_of(0)};
      break;
    }
    case Rule::ImpL: case Rule::IL: {
      need_premises(2);
      in_range(left_of(1), 0);
      s = Sequent{replace_at(left_of(1), k, need_formula(p, rule)), right_of(1)};
      break;
    }
    case Rule::AndR:
      need_premises(2);
      s = Sequent{left_of(0), mk_and(right_of(0), right_of(1))};
      break;
    case Rule::ImpR: {
      need_premises(1);
      auto l = left_of(0);
      if (l.empty()) fail("BadIndex", "impR: empty premise");
      Term a = l.back();
      l.pop_back();
      s = Sequent{l, mk_imp(a, right_of(0))};
      break;
    }
    case Rule::ForallR: {
      need_premises(1);
      if (!p.term.valid() || !p.term.is(TermKind::FVar)) fail("BadEigenvariable", "forallR: missing eigenvariable");
      s = Sequent{left_of(0), mk_forall(abstract_var(right_of(0), p.term.name(), p.term.type()))};
      break;
    }
    case Rule::OrR1: case Rule::OrR2: case Rule::ExistsR: case Rule::IR: case Rule::IRp: {
      need_premises(1);
      s = Sequent{left_of(0), need_formula(p, rule)};
      break;
    }
    case Rule::CIR:
      need_premises(2);
      s = Sequent{left_of(0), need_formula(p, rule)};
      break;
    case Rule::Subst:
      need_premises(1);
      s = premises[0].concl();
      break;
    case Rule::MC:
      break;
  }
  p.formula = Term();  // recorded in the conclusion now
  return derive(d, std::move(s), rule, std::move(p), std::move(premises));
}

// ---------------------------------------------------------------------------

Derivation weaken_to(const DefTable& d, const Derivation& pi, const std::vector<Term>& target) {
  // match pi's formulas into target; unmatched target positions are extras
  std::vector<bool> used(target.size(), false);
  for (const auto& f : pi.concl().left) {
    bool found = false;
    for (size_t j = 0; j < target.size() && !found; ++j)
      if (!used[j] && target[j] == f) used[j] = found = true;
    if (!found) fail("InternalError", "weaken_to: " + show(f) + " missing from the target");
  }
  // build bottom-up: the chain removes extras left to right from the bottom
  std::vector<std::pair<std::vector<Term>, int>> steps;
  std::vector<Term> cur;
  std::vector<bool> keep_flags;
  for (size_t j = 0; j < target.size(); ++j) {
    cur.push_back(target[j]);
    keep_flags.push_back(used[j]);
  }
  // record sequents from the bottom
  std::vector<Term> level = cur;
  std::vector<bool> flags = keep_flags;
  while (true) {
    size_t pos = flags.size();
    for (size_t j = 0; j < flags.size(); ++j)
      if (!flags[j]) {
        pos = j;
        break;
      }
    if (pos == flags.size()) break;
    steps.emplace_back(level, static_cast<int>(pos));
    level.erase(level.begin() + static_cast<std::ptrdiff_t>(pos));
    flags.erase(flags.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  Derivation out = pi;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    Payload p;
    p.index = it->second;
    out = derive(d, Sequent{it->first, pi.concl().right}, Rule::WL, p, {out});
  }
  return out;
}

Derivation contract_to(const DefTable& d, const Derivation& pi, const std::vector<Term>& target) {
  std::vector<bool> used(pi.concl().left.size(), false);
  for (const auto& f : target) {
    bool found = false;
    for (size_t j = 0; j < used.size() && !found; ++j)
      if (!used[j] && pi.concl().left[j] == f) used[j] = found = true;
    if (!found) fail("InternalError", "contract_to: " + show(f) + " missing from the premise");
  }
  std::vector<Term> extras;
  for (size_t j = 0; j < used.size(); ++j)
    if (!used[j]) extras.push_back(pi.concl().left[j]);
  // sequents from the bottom: target, target+e0, target+e0+e1, ...
  std::vector<std::vector<Term>> levels{target};
  std::vector<int> idx;
  for (const auto& e : extras) {
    const auto& base = levels.back();
    auto at = std::find(target.begin(), target.end(), e);
    if (at == target.end()) fail("InternalError", "contract_to: " + show(e) + " has no copy left");
    idx.push_back(static_cast<int>(at - target.begin()));
    auto next = base;
    next.push_back(e);
    levels.push_back(next);
  }
  Derivation out = pi;
  for (size_t i = extras.size(); i-- > 0;) {
    Payload p;
    p.index = idx[i];
    out = derive(d, Sequent{levels[i], pi.concl().right}, Rule::CL, p, {out});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// [F] ⊢ G where G is F with the predicate `pred` replaced by parameter `x`.
Derivation monotone(const DefTable& d, const Term& f, const Term& g, const std::string& pred, const Term& x) {
  if (f == g) return identity(f);
  FormulaView vf = view(f), vg = view(g);
  Sequent s{{f}, g};
  Payload p;
  p.index = 0;
  switch (vf.kind) {
    case FormulaKind::Pred: {
      // IL with the parameter itself as invariant
      if (vf.head.name() != pred || vg.kind != FormulaKind::ParamAtom)
        fail("InternalError", "unfold_right: unexpected atom " + show(f));
      const DefClause& c = *d.find(pred);
      Term inv = normalize(x, c.type);
      std::vector<Term> ys;
      for (const auto& t : c.type.args()) ys.push_back(Term::fvar(fresh_name("y"), t));
      Term by = d.unfold(pred, inv, ys);
      Term sy = normalize(Term::apps(inv, ys), Type::prop());
      Derivation irp = derive(d, Sequent{{by}, sy}, Rule::IRp, Payload{}, {identity(by)});
      p.invariant = inv;
      p.vars = ys;
      return derive(d, s, Rule::IL, p, {irp, identity(g)});
    }
    case FormulaKind::And: {
      Payload p1 = p, p2 = p;
      Derivation l = derive(d, Sequent{{f}, vg.left}, Rule::AndL1, p1, {monotone(d, vf.left, vg.left, pred, x)});
      Derivation r = derive(d, Sequent{{f}, vg.right}, Rule::AndL2, p2, {monotone(d, vf.right, vg.right, pred, x)});
      return derive(d, s, Rule::AndR, Payload{}, {l, r});
    }
    case FormulaKind::Or: {
      Derivation l = derive(d, Sequent{{vf.left}, g}, Rule::OrR1, Payload{}, {monotone(d, vf.left, vg.left, pred, x)});
      Derivation r = derive(d, Sequent{{vf.right}, g}, Rule::OrR2, Payload{}, {monotone(d, vf.right, vg.right, pred, x)});
      return derive(d, s, Rule::OrL, p, {l, r});
    }
    case FormulaKind::Imp: {
      if (vf.left != vg.left) fail("NotStratified", "unfold_right: " + pred + " occurs left of an implication");
      Payload w;
      w.index = 1;
      Derivation inner = derive(d, Sequent{{vf.right, vg.left}, vg.right}, Rule::WL, w,
                                {monotone(d, vf.right, vg.right, pred, x)});
      Derivation il = derive(d, Sequent{{f, vg.left}, vg.right}, Rule::ImpL, p, {identity(vg.left), inner});
      return derive(d, s, Rule::ImpR, Payload{}, {il});
    }
    case FormulaKind::Forall: {
      Term y = Term::fvar(fresh_name(vf.abs.name()), vf.qtype);
      Term fy = instance(vf.abs, y), gy = instance(vg.abs, y);
      Payload pl = p;
      pl.term = y;
      Derivation l = derive(d, Sequent{{f}, gy}, Rule::ForallL, pl, {monotone(d, fy, gy, pred, x)});
      Payload pr;
      pr.term = y;
      return derive(d, s, Rule::ForallR, pr, {l});
    }
    case FormulaKind::Exists: {
      Term y = Term::fvar(fresh_name(vf.abs.name()), vf.qtype);
      Term fy = instance(vf.abs, y), gy = instance(vg.abs, y);
      Payload pr;
      pr.term = y;
      Derivation r = derive(d, Sequent{{fy}, g}, Rule::ExistsR, pr, {monotone(d, fy, gy, pred, x)});
      Payload pl = p;
      pl.term = y;
      return derive(d, s, Rule::ExistsL, pl, {r});
    }
    default:
      fail("InternalError", "unfold_right: formulas " + show(f) + " and " + show(g) + " differ");
  }
}

}  // namespace

Derivation unfold_right(const DefTable& d, const Derivation& pi, const std::string& pred) {
  const DefClause* c = d.find(pred);
  if (!c) fail("UnknownDefinition", pred + " has no definition");
  if (!c->inductive()) fail("NotInductive", pred + " is not inductive");
  if (!is_stratified(d)[pred]) fail("NotStratified", pred + " is not stratified");
  Term head = Term::constant(pred, c->type);
  std::vector<Term> xs;
  for (const auto& t : c->type.args()) xs.push_back(Term::fvar(fresh_name("x"), t));
  auto m = match(d.unfold(pred, head, xs), pi.concl().right);
  if (!m) fail("NotAnUnfolding", show(pi.concl().right) + " is not an unfolding of " + pred);
  std::vector<Term> ts;
  for (const auto& x : xs) ts.push_back(apply(x, *m));
  Term goal = normalize(Term::apps(head, ts), Type::prop());
  Term bp = pi.concl().right;
  Param xp{fresh_name("X"), pred};
  Term xt = Term::param(xp, c->type);
  Term bx = d.unfold(pred, xt, ts);
  Payload ir;
  ir.param = xp;
  Derivation scaffold = derive(d, Sequent{{bp}, goal}, Rule::IR, ir, {monotone(d, bp, bx, pred, xt)});
  return make_mc(d, {pi}, scaffold, {0});
}

std::vector<size_t> major_premises(const Derivation& node) {
  size_t n = node.children().size();
  if (n == 0) return {};
  switch (node.rule()) {
    case Rule::ImpL:
    case Rule::MC:
    case Rule::IL:
      return {n - 1};
    case Rule::CIR:
      return {0};
    default: {
      std::vector<size_t> all(n);
      for (size_t i = 0; i < n; ++i) all[i] = i;
      return all;
    }
  }
}

size_t height(const Derivation& pi) { return pi.height(); }

}  // namespace linc
