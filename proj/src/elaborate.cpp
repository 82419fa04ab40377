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

#include "linc/elaborate.hpp"

#include <algorithm>
#include <functional>

#include "linc/formula.hpp"
#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/transform.hpp"
#include "linc/unify.hpp"

namespace linc {

const ProofEntry* Theory::proof(const std::string& name) const {
  for (const auto& p : proofs)
    if (p.name == name) return &p;
  return nullptr;
}
const GoalEntry* Theory::goal(const std::string& name) const {
  for (const auto& g : goals)
    if (g.name == name) return &g;
  return nullptr;
}
const NamedInvariant* Theory::invariant(const std::string& name) const {
  for (const auto& i : invariants)
    if (i.name == name) return &i;
  return nullptr;
}

namespace {

// Simple types with metavariables, solved by first-order unification.
class Infer {
 public:
  int meta() { return add({Kind::Meta, "", -1, -1, -1}); }
  int of(const Type& t) {
    if (t.is_base()) return add({Kind::Base, t.name(), -1, -1, -1});
    return arrow(of(t.from()), of(t.to()));
  }
  int arrow(int a, int b) { return add({Kind::Arrow, "", a, b, -1}); }
  int prop() { return of(Type::prop()); }

  int find(int x) const {
    while (ns_[static_cast<size_t>(x)].kind == Kind::Meta && ns_[static_cast<size_t>(x)].link >= 0)
      x = ns_[static_cast<size_t>(x)].link;
    return x;
  }
  bool unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    N& x = ns_[static_cast<size_t>(a)];
    N& y = ns_[static_cast<size_t>(b)];
    if (x.kind == Kind::Meta) return bind(a, b);
    if (y.kind == Kind::Meta) return bind(b, a);
    if (x.kind != y.kind) return false;
    if (x.kind == Kind::Base) return x.name == y.name;
    int xa = x.a, xb = x.b, ya = y.a, yb = y.b;
    return unify(xa, ya) && unify(xb, yb);
  }
  std::optional<Type> resolve(int x) const {
    x = find(x);
    const N& n = ns_[static_cast<size_t>(x)];
    if (n.kind == Kind::Meta) return std::nullopt;
    if (n.kind == Kind::Base) return n.name == "o" ? Type::prop() : Type::base(n.name);
    auto a = resolve(n.a), b = resolve(n.b);
    if (!a || !b) return std::nullopt;
    return Type::arrow(*a, *b);
  }
  std::string show(int x) const {
    x = find(x);
    const N& n = ns_[static_cast<size_t>(x)];
    if (n.kind == Kind::Meta) return "?" + std::to_string(x);
    if (n.kind == Kind::Base) return n.name;
    std::string l = show(n.a);
    if (ns_[static_cast<size_t>(find(n.a))].kind == Kind::Arrow) l = "(" + l + ")";
    return l + " -> " + show(n.b);
  }

 private:
  enum class Kind { Meta, Base, Arrow };
  struct N {
    Kind kind;
    std::string name;
    int a, b, link;
  };
  std::vector<N> ns_;

  int add(N n) {
    ns_.push_back(std::move(n));
    return static_cast<int>(ns_.size() - 1);
  }
  bool occurs(int m, int t) const {
    t = find(t);
    if (t == m) return true;
    const N& n = ns_[static_cast<size_t>(t)];
    return n.kind == Kind::Arrow && (occurs(m, n.a) || occurs(m, n.b));
  }
  bool bind(int m, int t) {
    if (occurs(m, t)) return false;
    ns_[static_cast<size_t>(m)].link = t;
    return true;
  }
};

[[noreturn]] void fail_at(const std::string& code, const std::string& msg, Span sp) { throw SyntaxError(code, msg, sp); }

class TermElab {
 public:
  TermElab(const DefTable& d, const std::map<std::string, Type>& vars, bool allow_new)
      : d_(d), vars_(vars), allow_new_(allow_new) {}

  Term run(const STerm& t, const Type& expected) {
    std::vector<std::pair<std::string, int>> env;
    int ty = infer(t, env);
    if (!inf_.unify(ty, inf_.of(expected)))
      fail_at("IllTyped", "term of type " + inf_.show(ty) + " where " + expected.str() + " is expected", t.span);
    std::vector<std::string> names;
    Term raw = build(t, names);
    try {
      return normalize(raw, expected);
    } catch (const Error& e) {
      fail_at(e.code(), e.what(), t.span);
    }
  }

  const std::map<std::string, Type>& new_vars() const { return resolved_new_; }

 private:
  const DefTable& d_;
  const std::map<std::string, Type>& vars_;
  bool allow_new_;
  Infer inf_;
  std::map<const STerm*, int> node_ty_;  // binder type or equality type
  std::map<std::string, int> new_;
  std::map<std::string, Type> resolved_new_;

  int infer(const STerm& t, std::vector<std::pair<std::string, int>>& env) {
    using K = STerm::Kind;
    switch (t.kind) {
      case K::Ident: {
        for (size_t i = env.size(); i-- > 0;)
          if (env[i].first == t.name) return env[i].second;
        if (auto it = vars_.find(t.name); it != vars_.end()) return inf_.of(it->second);
        if (const Type* ty = d_.sig.find(t.name)) return inf_.of(*ty);
        if (auto it = new_.find(t.name); it != new_.end()) return it->second;
        if (!allow_new_) fail_at("UnknownIdentifier", "unknown identifier '" + t.name + "'", t.span);
        return new_[t.name] = inf_.meta();
      }
      case K::Param: {
        const Type* ty = d_.sig.find(t.pred);
        if (!ty || !ty->target().is_prop())
          fail_at("UnknownPredicate", "parameter " + t.name + "^" + t.pred + " of an undeclared predicate", t.span);
        return inf_.of(*ty);
      }
      case K::True:
      case K::False:
        return inf_.prop();
      case K::App: {
        int f = infer(t.kids[0], env);
        int a = infer(t.kids[1], env);
        int r = inf_.meta();
        if (!inf_.unify(f, inf_.arrow(a, r)))
          fail_at("IllTyped", "cannot apply a term of type " + inf_.show(f) + " to one of type " + inf_.show(a),
                  t.kids[1].span);
        return r;
      }
      case K::Lam:
      case K::Forall:
      case K::Exists: {
        int bt = t.type ? inf_.of(*t.type) : inf_.meta();
        node_ty_[&t] = bt;
        env.emplace_back(t.name, bt);
        int b = infer(t.kids[0], env);
        env.pop_back();
        if (t.kind == K::Lam) return inf_.arrow(bt, b);
        if (!inf_.unify(b, inf_.prop())) fail_at("IllTyped", "quantifier body is not a formula", t.kids[0].span);
        return inf_.prop();
      }
      case K::And:
      case K::Or:
      case K::Imp:
        for (const auto& k : t.kids)
          if (!inf_.unify(infer(k, env), inf_.prop()))
            fail_at("IllTyped", "operand of a connective is not a formula", k.span);
        return inf_.prop();
      case K::Eq: {
        int a = infer(t.kids[0], env);
        int b = infer(t.kids[1], env);
        if (!inf_.unify(a, b))
          fail_at("IllTyped", "equation between types " + inf_.show(a) + " and " + inf_.show(b), t.span);
        node_ty_[&t] = a;
        return inf_.prop();
      }
    }
    return inf_.prop();
  }

  Type resolved(int x, const std::string& what, Span sp) {
    auto ty = inf_.resolve(x);
    if (!ty) fail_at("AmbiguousType", "cannot infer the type of " + what, sp);
    return *ty;
  }

  Term build(const STerm& t, std::vector<std::string>& names) {
    using K = STerm::Kind;
    switch (t.kind) {
      case K::Ident: {
        for (size_t i = names.size(); i-- > 0;)
          if (names[i] == t.name) return Term::bvar(static_cast<std::uint32_t>(names.size() - 1 - i));
        if (auto it = vars_.find(t.name); it != vars_.end()) return Term::fvar(t.name, it->second);
        if (const Type* ty = d_.sig.find(t.name)) return Term::constant(t.name, *ty);
        Type ty = resolved(new_.at(t.name), "'" + t.name + "'", t.span);
        resolved_new_.emplace(t.name, ty);
        return Term::fvar(t.name, ty);
      }
      case K::Param:
        return Term::param(Param{t.name, t.pred}, *d_.sig.find(t.pred));
      case K::True:
        return mk_true();
      case K::False:
        return mk_false();
      case K::App: {
        Term f = build(t.kids[0], names);
        return Term::app(f, build(t.kids[1], names));
      }
      case K::Lam:
      case K::Forall:
      case K::Exists: {
        Type bt = resolved(node_ty_.at(&t), "'" + t.name + "'", t.span);
        if (t.kind != K::Lam && !bt.is_efo())
          fail_at("IllTyped", "quantification over the non-efo type " + bt.str(), t.span);
        names.push_back(t.name);
        Term body = build(t.kids[0], names);
        names.pop_back();
        Term abs = Term::lam(t.name, bt, body);
        if (t.kind == K::Lam) return abs;
        const char* c = t.kind == K::Forall ? conn::kForall : conn::kExists;
        Type o = Type::prop();
        return Term::app(Term::constant(c, Type::arrow(Type::arrow(bt, o), o)), abs);
      }
      case K::And:
      case K::Or:
      case K::Imp: {
        const char* c = t.kind == K::And ? conn::kAnd : t.kind == K::Or ? conn::kOr : conn::kImp;
        Type o = Type::prop();
        Term l = build(t.kids[0], names);
        Term r = build(t.kids[1], names);
        return Term::apps(Term::constant(c, Type::arrow(o, Type::arrow(o, o))), {l, r});
      }
      case K::Eq: {
        Type et = resolved(node_ty_.at(&t), "an equation", t.span);
        if (!et.is_efo()) fail_at("IllTyped", "equality at the non-efo type " + et.str(), t.span);
        Term l = build(t.kids[0], names);
        Term r = build(t.kids[1], names);
        return Term::apps(Term::constant(conn::kEq, Type::arrow(et, Type::arrow(et, Type::prop()))), {l, r});
      }
    }
    return {};
  }
};

}  // namespace

Term elaborate_term(const DefTable& d, const STerm& t, const Type& expected, const std::map<std::string, Type>& vars,
                    bool allow_new) {
  TermElab e(d, vars, allow_new);
  return e.run(t, expected);
}

namespace {

// Elaborates the sequent, adding inferred free variables to `vars`.
Sequent seq_in(const DefTable& d, const std::vector<STerm>& left, const STerm& right,
               std::map<std::string, Type>& vars, bool allow_new) {
  // one inference problem for the whole sequent, so variables agree
  STerm all = right;
  for (size_t i = left.size(); i-- > 0;) {
    STerm c;
    c.kind = STerm::Kind::Imp;
    c.kids = {left[i], all};
    c.span = left[i].span;
    all = std::move(c);
  }
  TermElab e(d, vars, allow_new);
  e.run(all, Type::prop());
  for (const auto& [x, ty] : e.new_vars()) vars.emplace(x, ty);
  Sequent s;
  for (const auto& l : left) s.left.push_back(elaborate_term(d, l, Type::prop(), vars));
  s.right = elaborate_term(d, right, Type::prop(), vars);
  return s;
}

}  // namespace

Sequent elaborate_sequent(const DefTable& d, const std::vector<STerm>& left, const STerm& right,
                          const std::map<std::string, Type>& vars, bool allow_new) {
  auto v = vars;
  return seq_in(d, left, right, v, allow_new);
}

Sequent read_sequent(const DefTable& d, const std::string& text) {
  auto [l, r] = parse_sequent_text(text);
  return elaborate_sequent(d, l, r);
}

// ---------------------------------------------------------------- scripts

namespace {

class ScriptElab {
 public:
  explicit ScriptElab(const Theory& th) : th_(th), d_(th.defs) {}

  Derivation run(const Sequent& g, const SStep& s) {
    try {
      return step(g, s);
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      fail_at(e.code(), e.what(), s.span);
    }
  }

 private:
  const Theory& th_;
  const DefTable& d_;

  Term term(const Sequent& g, const STerm& t, const Type& ty) {
    return elaborate_term(d_, t, ty, g.free_vars(), true);
  }

  int index_for(const Sequent& g, const SStep& s, const std::function<bool(const Term&)>& ok) {
    if (s.index) return *s.index;
    for (size_t i = 0; i < g.left.size(); ++i)
      if (ok(g.left[i])) return static_cast<int>(i);
    fail_at("WrongPrincipal", s.rule + ": no suitable formula on the left of " + show(g), s.span);
  }
  int index_kind(const Sequent& g, const SStep& s, FormulaKind k) {
    return index_for(g, s, [&](const Term& f) { return kind_of(f) == k; });
  }
  int index_pred(const Sequent& g, const SStep& s, FormulaKind k, Fixpoint fp) {
    return index_for(g, s, [&](const Term& f) {
      if (kind_of(f) != k) return false;
      FormulaView v = view(f);
      std::string p = k == FormulaKind::Pred ? v.head.name() : v.head.param().pred;
      const DefClause* c = d_.find(p);
      return c && c->flavor == fp;
    });
  }
  Term principal(const Sequent& g, int i, const SStep& s) {
    if (i < 0 || static_cast<size_t>(i) >= g.left.size())
      fail_at("BadIndex", s.rule + ": no formula at position " + std::to_string(i), s.span);
    return g.left[static_cast<size_t>(i)];
  }

  Term eigen(const Sequent& g, const std::string& name, const Type& ty, const SStep& s) {
    if (d_.sig.has_const(name)) fail_at("NotFresh", s.rule + ": " + name + " names a constant", s.span);
    (void)g;
    return Term::fvar(name, ty);
  }

  std::vector<Term> invariant_vars(const Sequent& g, const SStep& s, const DefClause& c) {
    auto at = c.type.args();
    std::vector<Term> out;
    for (size_t i = 0; i < at.size(); ++i) {
      std::string n = i < s.names.size() ? s.names[i] : fresh_name("y");
      out.push_back(eigen(g, n, at[i], s));
    }
    if (s.names.size() > at.size()) fail_at("BadEigenvariable", s.rule + ": too many variables", s.span);
    return out;
  }

  Term invariant_term(const SStep& s, const DefClause& c) {
    const STerm& t = s.terms.at(0);
    if (t.kind == STerm::Kind::Ident && !d_.sig.has_const(t.name)) {
      if (const NamedInvariant* inv = th_.invariant(t.name)) return inv->term;
    }
    return elaborate_term(d_, t, c.type);
  }

  const DefClause& clause_of(const Term& atom, const SStep& s) {
    FormulaView v = view(atom);
    std::string p = v.kind == FormulaKind::Pred ? v.head.name() : v.kind == FormulaKind::ParamAtom ? v.head.param().pred : "";
    const DefClause* c = d_.find(p);
    if (!c) fail_at("UnknownDefinition", s.rule + ": " + show(atom) + " is not a defined atom", s.span);
    return *c;
  }

  Derivation finish(const Sequent& g, Rule r, Payload p, const SStep& s) {
    std::vector<Sequent> prem = expected_premises(d_, g, r, p);
    if (prem.size() != s.premises.size())
      fail_at("ArityMismatch",
              s.rule + " has " + std::to_string(prem.size()) + " premises, the script gives " +
                  std::to_string(s.premises.size()),
              s.span);
    std::vector<Derivation> kids;
    for (size_t j = 0; j < prem.size(); ++j) kids.push_back(run(prem[j], s.premises[j]));
    return Derivation::make(g, r, std::move(p), std::move(kids));
  }

  Derivation step(const Sequent& g, const SStep& s) {
    const std::string& r = s.rule;
    Payload p;
    if (r == "use") return use(g, s);
    if (r == "unfoldR") {
      FormulaView v = view(g.right);
      if (v.kind != FormulaKind::Pred) fail_at("WrongPrincipal", "unfoldR: the goal is not an atom", s.span);
      if (s.premises.size() != 1) fail_at("ArityMismatch", "unfoldR takes one premise", s.span);
      const std::string pred = v.head.name();
      Sequent prem{g.left, d_.unfold(pred, v.head, v.args)};
      return unfold_right(d_, run(prem, s.premises[0]), pred);
    }
    if (r == "mc") return cut(g, s);
    if (r == "init") {
      int i = index_for(g, s, [&](const Term& f) { return f == g.right; });
      if (g.left.size() == 1 && i == 0) return finish(g, Rule::Init, p, s);
      if (!s.premises.empty()) fail_at("ArityMismatch", "init has no premises", s.span);
      Derivation leaf = derive(d_, Sequent{{principal(g, i, s)}, g.right}, Rule::Init, {}, {});
      return weaken_to(d_, leaf, g.left).reorder(g.left);
    }
    auto rule = rule_from_name(r);
    if (!rule) fail_at("UnknownRule", "unknown rule " + r, s.span);
    switch (*rule) {
      case Rule::CL:
      case Rule::WL:
        if (!s.index) fail_at("BadIndex", r + " needs an index", s.span);
        p.index = *s.index;
        break;
      case Rule::BotL: p.index = index_kind(g, s, FormulaKind::False); break;
      case Rule::AndL1:
      case Rule::AndL2: p.index = index_kind(g, s, FormulaKind::And); break;
      case Rule::OrL: p.index = index_kind(g, s, FormulaKind::Or); break;
      case Rule::ImpL: p.index = index_kind(g, s, FormulaKind::Imp); break;
      case Rule::ForallL: {
        p.index = index_kind(g, s, FormulaKind::Forall);
        FormulaView v = view(principal(g, p.index, s));
        p.term = term(g, s.terms.at(0), v.qtype);
        break;
      }
      case Rule::ExistsL: {
        p.index = index_kind(g, s, FormulaKind::Exists);
        FormulaView v = view(principal(g, p.index, s));
        p.term = eigen(g, s.names.at(0), v.qtype, s);
        break;
      }
      case Rule::ForallR: {
        if (kind_of(g.right) != FormulaKind::Forall) fail_at("WrongPrincipal", "forallR: goal is not universal", s.span);
        p.term = eigen(g, s.names.at(0), view(g.right).qtype, s);
        break;
      }
      case Rule::ExistsR: {
        if (kind_of(g.right) != FormulaKind::Exists) fail_at("WrongPrincipal", "existsR: goal is not existential", s.span);
        p.term = term(g, s.terms.at(0), view(g.right).qtype);
        break;
      }
      case Rule::EqL: {
        p.index = index_kind(g, s, FormulaKind::Eq);
        FormulaView v = view(principal(g, p.index, s));
        if (!s.with.empty()) {
          auto fv = g.free_vars();
          Subst sigma;
          for (const auto& [x, t] : s.with) {
            auto it = fv.find(x);
            if (it == fv.end()) fail_at("NotAnMgu", "eqL: " + x + " is not a variable of the goal", s.span);
            sigma.bind(x, it->second, elaborate_term(d_, t, it->second, fv, true));
          }
          p.mgu = sigma;
        } else {
          p.mgu = unify(v.left, v.right);
        }
        break;
      }
      case Rule::IL: {
        p.index = index_pred(g, s, FormulaKind::Pred, Fixpoint::Mu);
        const DefClause& c = clause_of(principal(g, p.index, s), s);
        p.invariant = invariant_term(s, c);
        p.vars = invariant_vars(g, s, c);
        break;
      }
      case Rule::CIR: {
        if (kind_of(g.right) != FormulaKind::Pred) fail_at("WrongPrincipal", "CIR: goal is not an atom", s.span);
        const DefClause& c = clause_of(g.right, s);
        p.invariant = invariant_term(s, c);
        p.vars = invariant_vars(g, s, c);
        break;
      }
      case Rule::IR: {
        if (kind_of(g.right) != FormulaKind::Pred) fail_at("WrongPrincipal", "IR: goal is not an atom", s.span);
        const DefClause& c = clause_of(g.right, s);
        p.param = Param{s.names.empty() ? fresh_name("X") : s.names[0], c.pred};
        break;
      }
      case Rule::CIL: {
        p.index = index_pred(g, s, FormulaKind::Pred, Fixpoint::Nu);
        const DefClause& c = clause_of(principal(g, p.index, s), s);
        p.param = Param{s.names.empty() ? fresh_name("X") : s.names[0], c.pred};
        break;
      }
      case Rule::CILp: p.index = index_pred(g, s, FormulaKind::ParamAtom, Fixpoint::Nu); break;
      default: break;
    }
    return finish(g, *rule, std::move(p), s);
  }

  Derivation cut(const Sequent& g, const SStep& s) {
    size_t n = s.cuts.size();
    if (s.premises.size() != n + 1)
      fail_at("ArityMismatch", "mc with " + std::to_string(n) + " cuts needs " + std::to_string(n + 1) + " premises",
              s.span);
    std::vector<bool> used(g.left.size(), false);
    Sequent main{{}, g.right};
    std::vector<Derivation> kids;
    auto fv = g.free_vars();
    for (size_t k = 0; k < n; ++k) {
      Term b = elaborate_term(d_, s.cuts[k].formula, Type::prop(), fv, true);
      Sequent pk{{}, b};
      for (int q : s.cuts[k].positions) {
        if (q < 0 || static_cast<size_t>(q) >= g.left.size() || used[static_cast<size_t>(q)])
          fail_at("BadIndex", "mc: position " + std::to_string(q) + " is missing or already used", s.span);
        used[static_cast<size_t>(q)] = true;
        pk.left.push_back(g.left[static_cast<size_t>(q)]);
      }
      kids.push_back(run(pk, s.premises[k]));
      main.left.push_back(b);
    }
    for (size_t q = 0; q < g.left.size(); ++q)
      if (!used[q]) main.left.push_back(g.left[q]);
    kids.push_back(run(main, s.premises[n]));
    Payload p;
    for (size_t k = 0; k < n; ++k) p.cuts.push_back(static_cast<int>(k));
    return Derivation::make(g, Rule::MC, std::move(p), std::move(kids));
  }

  Derivation use(const Sequent& g, const SStep& s) {
    const ProofEntry* e = th_.proof(s.names.at(0));
    if (!e) fail_at("UnknownProof", "no proof named " + s.names[0], s.span);
    if (!e->ok()) fail_at("UnknownProof", "proof " + s.names[0] + " did not elaborate", s.span);
    if (s.terms.size() > e->vars.size()) fail_at("ArityMismatch", "use: too many arguments", s.span);
    Subst th;
    for (size_t i = 0; i < s.terms.size(); ++i)
      th.bind(e->vars[i].name(), e->vars[i].type(), term(g, s.terms[i], e->vars[i].type()));
    Derivation pi = th.empty() ? e->proof : subst_derivation(d_, e->proof, th);
    if (!same_sequent(pi.concl(), g))
      fail_at("PremiseMismatch", "use: " + s.names[0] + " proves " + show(pi.concl()) + ", not " + show(g), s.span);
    return pi.reorder(g.left);
  }
};

}  // namespace

Derivation elaborate_script(const Theory& th, const Sequent& goal, const SStep& script) {
  return ScriptElab(th).run(goal, script);
}

// ------------------------------------------------------------ declarations

Theory elaborate(const SourceFile& f) {
  Theory th;
  DefTable& d = th.defs;
  auto wrap = [](const SDecl& decl, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      fail_at(e.code(), e.what(), decl.span);
    }
  };
  auto check_type = [&](const Type& t, Span sp) {
    if (!d.sig.well_formed(t)) fail_at("UnknownType", "undeclared type in " + t.str(), sp);
  };
  for (const auto& decl : f.decls) {
    switch (decl.kind) {
      case SDecl::Kind::Kind:
        wrap(decl, [&] {
          for (const auto& n : decl.names) d.sig.add_kind(n);
        });
        break;
      case SDecl::Kind::Type:
        wrap(decl, [&] {
          for (const auto& n : decl.names) d.sig.add_const(n, decl.type);
        });
        break;
      case SDecl::Kind::Define:
        wrap(decl, [&] {
          const std::string& pred = decl.names[0];
          check_type(decl.type, decl.span);
          const Type* known = d.sig.find(pred);
          if (known && *known != decl.type)
            fail_at("DuplicateDeclaration", pred + " is declared with type " + known->str(), decl.span);
          if (!known) d.sig.add_const(pred, decl.type);
          auto at = decl.type.args();
          if (decl.head.size() != at.size())
            fail_at("ArityMismatch", pred + " takes " + std::to_string(at.size()) + " arguments", decl.span);
          STerm body = decl.body;
          for (size_t i = at.size(); i-- > 0;) {
            STerm l;
            l.kind = STerm::Kind::Lam;
            l.name = decl.head[i];
            l.type = at[i];
            l.kids = {std::move(body)};
            l.span = decl.span;
            body = std::move(l);
          }
          STerm outer;
          outer.kind = STerm::Kind::Lam;
          outer.name = pred;
          outer.type = decl.type;
          outer.kids = {std::move(body)};
          outer.span = decl.span;
          DefClause c;
          c.pred = pred;
          c.flavor = decl.flavor;
          c.type = decl.type;
          c.body = elaborate_term(d, outer, Type::arrow(decl.type, decl.type));
          c.line = decl.span.line;
          c.col = decl.span.col;
          d.add(std::move(c));
        });
        break;
      case SDecl::Kind::Level:
        d.level_overrides[decl.pred] = decl.level;
        d.level_spans[decl.pred] = {decl.span.line, decl.span.col};
        break;
      case SDecl::Kind::Invariant:
        wrap(decl, [&] {
          const Type* ty = d.sig.find(decl.pred);
          if (!ty || !d.find(decl.pred)) fail_at("UnknownDefinition", decl.pred + " is not defined", decl.span);
          th.invariants.push_back({decl.names[0], decl.pred, elaborate_term(d, decl.body, *ty)});
        });
        break;
      case SDecl::Kind::Goal:
      case SDecl::Kind::Proof: {
        std::map<std::string, Type> vars;
        std::vector<Term> declared;
        Sequent seq;
        wrap(decl, [&] {
          for (const auto& b : decl.binders) {
            check_type(b.type, decl.span);
            vars.emplace(b.name, b.type);
            declared.push_back(Term::fvar(b.name, b.type));
          }
          seq = seq_in(d, decl.left, decl.right, vars, true);
        });
        if (decl.kind == SDecl::Kind::Goal) {
          th.goals.push_back({decl.names[0], declared, seq, decl.span});
          break;
        }
        ProofEntry e;
        e.name = decl.names[0];
        e.vars = declared;
        e.seq = seq;
        e.span = decl.span;
        try {
          e.proof = elaborate_script(th, seq, decl.script);
        } catch (const SyntaxError& err) {
          e.error_code = err.code();
          e.error_message = err.what();
          e.error_span = err.span();
        }
        th.proofs.push_back(std::move(e));
        break;
      }
    }
  }
  th.diagnostics = validate_defs(d);
  return th;
}

Theory load_theory(const std::string& path) { return elaborate(parse_file(path)); }

// --------------------------------------------------------------- printing

Derivation canonical_order(const DefTable& d, const Derivation& pi) {
  std::vector<Derivation> kids;
  if (pi.rule() == Rule::MC) {
    size_t n = pi.children().size() - 1;
    const Derivation& main = pi.children().back();
    const auto& cuts = pi.payload().cuts;
    std::vector<bool> is_cut(main.concl().left.size(), false);
    for (int c : cuts) is_cut[static_cast<size_t>(c)] = true;
    std::vector<Term> expected;
    for (size_t k = 0; k < n; ++k) {
      const auto& l = pi.child(k).concl().left;
      expected.insert(expected.end(), l.begin(), l.end());
    }
    size_t nd = expected.size();
    std::vector<size_t> rest;
    for (size_t q = 0; q < is_cut.size(); ++q)
      if (!is_cut[q]) {
        rest.push_back(q);
        expected.push_back(main.concl().left[q]);
      }
    auto perm = align(expected, pi.concl().left);
    if (!perm) throw Error("InternalError", "mc conclusion does not match its premises");
    std::vector<size_t> order(rest.size());
    for (size_t g = 0; g < rest.size(); ++g) order[g] = g;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return (*perm)[nd + a] < (*perm)[nd + b]; });
    std::vector<Term> target;
    for (int c : cuts) target.push_back(main.concl().left[static_cast<size_t>(c)]);
    for (size_t g : order) target.push_back(main.concl().left[rest[g]]);
    for (size_t k = 0; k < n; ++k) kids.push_back(canonical_order(d, pi.child(k)));
    kids.push_back(canonical_order(d, main.reorder(target)));
    Payload p = pi.payload();
    p.cuts.clear();
    for (size_t k = 0; k < n; ++k) p.cuts.push_back(static_cast<int>(k));
    return Derivation::make(pi.concl(), Rule::MC, std::move(p), std::move(kids));
  }
  auto exp = expected_premises(d, pi.concl(), pi.rule(), pi.payload());
  for (size_t j = 0; j < pi.children().size(); ++j)
    kids.push_back(canonical_order(d, pi.child(j).reorder(exp[j].left)));
  return pi.with_children(std::move(kids));
}

namespace {

STerm surface(const Term& t) { return parse_term_text(show(t)); }

SStep script_of(const DefTable& d, const Derivation& pi) {
  SStep s;
  s.rule = rule_name(pi.rule());
  const Payload& p = pi.payload();
  if (is_left_rule(pi.rule()) && p.index >= 0) s.index = p.index;
  switch (pi.rule()) {
    case Rule::ForallL:
    case Rule::ExistsR:
      s.terms.push_back(surface(p.term));
      break;
    case Rule::ForallR:
    case Rule::ExistsL:
      s.names.push_back(p.term.name());
      break;
    case Rule::EqL:
      if (p.mgu)
        for (const auto& [x, e] : *p.mgu) s.with.emplace_back(x, surface(e.value));
      break;
    case Rule::IL:
    case Rule::CIR:
      s.terms.push_back(surface(p.invariant));
      for (const auto& y : p.vars) s.names.push_back(y.name());
      break;
    case Rule::IR:
    case Rule::CIL:
      s.names.push_back(p.param->name);
      break;
    case Rule::MC: {
      size_t n = pi.children().size() - 1;
      const Derivation& main = pi.children().back();
      std::vector<Term> expected;
      for (size_t k = 0; k < n; ++k) {
        const auto& l = pi.child(k).concl().left;
        expected.insert(expected.end(), l.begin(), l.end());
      }
      for (size_t q = n; q < main.concl().left.size(); ++q) expected.push_back(main.concl().left[q]);
      auto perm = align(expected, pi.concl().left);
      size_t off = 0;
      for (size_t k = 0; k < n; ++k) {
        SCut c;
        c.formula = surface(main.concl().left[k]);
        for (size_t j = 0; j < pi.child(k).concl().left.size(); ++j) c.positions.push_back(static_cast<int>((*perm)[off + j]));
        off += pi.child(k).concl().left.size();
        s.cuts.push_back(std::move(c));
      }
      break;
    }
    default:
      break;
  }
  for (const auto& c : pi.children()) s.premises.push_back(script_of(d, c));
  return s;
}

}  // namespace

SStep to_script(const DefTable& d, const Derivation& pi) { return script_of(d, canonical_order(d, pi)); }

}  // namespace linc
