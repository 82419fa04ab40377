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

#include "linc/transform.hpp"

#include <functional>
#include <unordered_map>

#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/unify.hpp"

namespace linc {

namespace {

void payload_names(const Payload& p, std::map<std::string, Type>& vars, std::set<Param>& params) {
  for (const Term* t : {&p.term, &p.formula, &p.invariant}) {
    if (!t->valid()) continue;
    collect_free_vars(*t, vars);
    collect_params(*t, params);
  }
  for (const auto& v : p.vars) collect_free_vars(v, vars);
  if (p.param) params.insert(*p.param);
  if (p.mgu)
    for (const auto& [x, e] : *p.mgu) {
      vars.emplace(x, e.type);
      collect_free_vars(e.value, vars);
    }
}

std::vector<Term> map_terms(const std::vector<Term>& v, const std::function<Term(const Term&)>& f) {
  std::vector<Term> out;
  out.reserve(v.size());
  for (const auto& t : v) out.push_back(f(t));
  return out;
}

Sequent map_sequent(const Sequent& s, const std::function<Term(const Term&)>& f) {
  return Sequent{map_terms(s.left, f), f(s.right)};
}

}  // namespace

std::set<std::string> introduced_vars(const Derivation& node) {
  std::map<std::string, Type> inner;
  std::set<Param> ignore;
  for (const auto& c : node.children()) {
    auto fv = c.concl().free_vars();
    inner.insert(fv.begin(), fv.end());
  }
  payload_names(node.payload(), inner, ignore);
  auto outer = node.concl().free_vars();
  std::set<std::string> out;
  for (const auto& [x, _] : inner)
    if (!outer.count(x)) out.insert(x);
  return out;
}

std::set<Param> introduced_params(const Derivation& node) {
  std::set<Param> inner;
  std::map<std::string, Type> ignore;
  for (const auto& c : node.children()) {
    auto ps = c.concl().params();
    inner.insert(ps.begin(), ps.end());
  }
  payload_names(node.payload(), ignore, inner);
  auto outer = node.concl().params();
  std::set<Param> out;
  for (const auto& x : inner)
    if (!outer.count(x)) out.insert(x);
  return out;
}

Derivation rename_apart(const Derivation& pi, const std::set<std::string>& vars, const std::set<Param>& params) {
  if (vars.empty() && params.empty()) return pi;
  std::function<Derivation(const Derivation&)> go = [&](const Derivation& n0) -> Derivation {
    Derivation n = n0;
    std::map<std::string, std::string> vm;
    std::map<Param, Param> pm;
    for (const auto& x : introduced_vars(n))
      if (vars.count(x)) vm.emplace(x, fresh_name(x));
    for (const auto& x : introduced_params(n))
      if (params.count(x)) pm.emplace(x, Param{fresh_name(x.name), x.pred});
    if (!vm.empty() || !pm.empty()) n = rename_derivation(n, vm, pm);
    std::vector<Derivation> kids;
    bool changed = false;
    for (const auto& c : n.children()) {
      kids.push_back(go(c));
      changed = changed || kids.back().identity() != c.identity();
    }
    return changed ? n.with_children(std::move(kids)) : n;
  };
  return go(pi);
}

// ---------------------------------------------------------------------------

Derivation subst_derivation(const DefTable& d, const Derivation& pi0, const Subst& theta0) {
  Subst theta = restrict_to(theta0, pi0.concl().free_vars());
  if (theta.empty()) return pi0;
  std::set<std::string> avoid;
  for (const auto& [y, _] : theta.range_vars()) avoid.insert(y);
  Derivation pi = pi0;
  {
    std::map<std::string, std::string> vm;
    for (const auto& x : introduced_vars(pi))
      if (avoid.count(x)) vm.emplace(x, fresh_name(x));
    if (!vm.empty()) pi = rename_derivation(pi, vm, {});
  }
  auto th = [&](const Term& t) { return apply(t, theta); };
  Sequent concl = map_sequent(pi.concl(), th);
  Payload p = pi.payload();
  std::vector<Derivation> kids;
  switch (pi.rule()) {
    case Rule::ForallL:
    case Rule::ExistsR:
      p.term = th(p.term);
      break;
    case Rule::EqL: {
      FormulaView v = view(pi.concl().left[static_cast<size_t>(p.index)]);
      auto sigma2 = unify(th(v.left), th(v.right));
      if (!sigma2) {
        p.mgu.reset();
        return Derivation::make(std::move(concl), Rule::EqL, std::move(p), {});
      }
      const Subst& sigma = *p.mgu;
      // connect the old premise to the new one: yσδ = yθσ'
      auto dom = pi.concl().free_vars();
      for (const auto& [x, e] : sigma) dom.emplace(x, e.type);
      TermPairs pairs;
      for (const auto& [y, ty] : dom) {
        Term v = Term::fvar(y, ty);
        pairs.emplace_back(apply(v, sigma), apply(th(v), *sigma2));
      }
      auto delta = match_all(pairs);
      if (!delta) throw Error("InternalError", "eqL: stored unifier is not most general");
      p.mgu = *sigma2;
      kids.push_back(subst_derivation(d, pi.child(0), *delta));
      return Derivation::make(std::move(concl), Rule::EqL, std::move(p), std::move(kids));
    }
    default:
      break;
  }
  if (p.formula.valid()) p.formula = th(p.formula);
  for (const auto& c : pi.children()) kids.push_back(subst_derivation(d, c, theta));
  return Derivation::make(std::move(concl), pi.rule(), std::move(p), std::move(kids));
}

// ---------------------------------------------------------------------------

Derivation param_subst_derivation(const DefTable& d, const Derivation& pi0, const ParamSubst& theta0) {
  auto here = pi0.concl().params();
  ParamSubst theta;
  for (const auto& [x, b] : theta0) {
    const DefClause* c = d.find(x.pred);
    Type want = c ? c->type : Type();
    if (!b.invariant.valid() || !want.valid() || type_of(b.invariant) != want)
      throw Error("TypeMismatch", "invariant for " + x.str() + " does not have the type of " + x.pred);
    if (here.count(x)) theta.emplace(x, b);
  }
  if (theta.empty()) return pi0;
  std::map<Param, Term> images;
  std::set<Param> avoid;
  for (const auto& [x, b] : theta) {
    images.emplace(x, b.invariant);
    avoid.insert(x);
    collect_params(b.invariant, avoid);
  }
  Derivation pi = pi0;
  {
    std::map<Param, Param> pm;
    for (const auto& x : introduced_params(pi))
      if (avoid.count(x)) pm.emplace(x, Param{fresh_name(x.name), x.pred});
    if (!pm.empty()) pi = rename_derivation(pi, {}, pm);
  }
  auto th = [&](const Term& t) { return t.valid() ? replace_params(t, images) : t; };
  Sequent concl = map_sequent(pi.concl(), th);
  auto instance_proof = [&](const ParamBinding& b, const std::vector<Term>& ts) {
    Subst s;
    for (size_t i = 0; i < b.vars.size(); ++i) s.bind(b.vars[i].name(), b.vars[i].type(), ts[i]);
    return subst_derivation(d, b.proof, s);
  };
  if (pi.rule() == Rule::IRp) {
    FormulaView v = view(pi.concl().right);
    auto it = theta.find(v.head.param());
    if (it != theta.end()) {
      Derivation top = param_subst_derivation(d, pi.child(0), theta);
      Derivation out = make_mc(d, {top}, instance_proof(it->second, v.args), {0});
      return out.reorder(concl.left);
    }
  }
  if (pi.rule() == Rule::CILp) {
    size_t k = static_cast<size_t>(pi.payload().index);
    FormulaView v = view(pi.concl().left[k]);
    auto it = theta.find(v.head.param());
    if (it != theta.end()) {
      Term st = concl.left[k];
      Derivation inner = make_mc(d, {identity(st)}, instance_proof(it->second, v.args), {0});
      Derivation top = param_subst_derivation(d, pi.child(0), theta);
      Derivation out = make_mc(d, {inner}, top, {static_cast<int>(k)});
      return out.reorder(concl.left);
    }
  }
  Payload p = pi.payload();
  p.invariant = th(p.invariant);
  p.formula = th(p.formula);
  std::vector<Derivation> kids;
  for (const auto& c : pi.children()) kids.push_back(param_subst_derivation(d, c, theta));
  return Derivation::make(std::move(concl), pi.rule(), std::move(p), std::move(kids));
}

// ---------------------------------------------------------------------------

Derivation eliminate_subst(const Derivation& pi) {
  if (pi.subst_free()) return pi;
  std::unordered_map<const void*, Derivation> memo;
  std::function<Derivation(const Derivation&)> go = [&](const Derivation& n) -> Derivation {
    if (n.subst_free()) return n;
    auto it = memo.find(n.identity());
    if (it != memo.end()) return it->second;
    Derivation out;
    if (n.rule() == Rule::Subst) {
      out = go(n.child(0)).reorder(n.concl().left);
    } else {
      std::vector<Derivation> kids;
      for (const auto& c : n.children()) kids.push_back(go(c));
      out = n.with_children(std::move(kids));
    }
    memo.emplace(n.identity(), out);
    return out;
  };
  return go(pi);
}

// ---------------------------------------------------------------------------

namespace {

void ordered_atoms(const Term& t, std::vector<std::pair<std::string, Type>>& vars, std::vector<Param>& params) {
  if (!t.valid()) return;
  switch (t.kind()) {
    case TermKind::FVar:
      for (const auto& [n, _] : vars)
        if (n == t.name()) return;
      vars.emplace_back(t.name(), t.type());
      return;
    case TermKind::Param:
      for (const auto& q : params)
        if (q == t.param()) return;
      params.push_back(t.param());
      return;
    case TermKind::Lam:
      ordered_atoms(t.body(), vars, params);
      return;
    case TermKind::App:
      ordered_atoms(t.fun(), vars, params);
      ordered_atoms(t.arg(), vars, params);
      return;
    default:
      return;
  }
}

struct Canon {
  int vcount = 0;
  int pcount = 0;

  Derivation run(const Derivation& n, const std::map<std::string, std::string>& env,
                 const std::map<Param, Param>& penv) {
    std::vector<std::pair<std::string, Type>> vs;
    std::vector<Param> ps;
    for (const auto& c : n.children()) {
      for (const auto& f : c.concl().left) ordered_atoms(f, vs, ps);
      ordered_atoms(c.concl().right, vs, ps);
    }
    const Payload& p0 = n.payload();
    ordered_atoms(p0.term, vs, ps);
    for (const auto& v : p0.vars) ordered_atoms(v, vs, ps);
    if (p0.mgu)
      for (const auto& [x, e] : *p0.mgu) ordered_atoms(e.value, vs, ps);
    ordered_atoms(p0.invariant, vs, ps);
    ordered_atoms(p0.formula, vs, ps);
    if (p0.param) ps.push_back(*p0.param);
    auto outer_v = n.concl().free_vars();
    auto outer_p = n.concl().params();
    std::map<std::string, std::string> local = env;
    std::map<Param, Param> plocal = penv;
    for (const auto& [x, _] : vs)
      if (!outer_v.count(x) && !local.count(x)) local[x] = "_i" + std::to_string(++vcount);
    for (const auto& x : ps)
      if (!outer_p.count(x) && !plocal.count(x)) plocal[x] = Param{"_P" + std::to_string(++pcount), x.pred};
    // rebuild this node under `local`, children under their own scopes
    auto ren = [&](const Term& t) { return t.valid() ? rename_params(rename_vars(t, local), plocal) : t; };
    Sequent s = map_sequent(n.concl(), ren);
    Payload p = p0;
    p.term = ren(p.term);
    p.formula = ren(p.formula);
    p.invariant = ren(p.invariant);
    for (auto& v : p.vars) v = ren(v);
    if (p.param && plocal.count(*p.param)) p.param = plocal.at(*p.param);
    if (p.mgu) {
      Subst m;
      for (const auto& [x, e] : *p.mgu) m.bind(local.count(x) ? local.at(x) : x, e.type, ren(e.value));
      p.mgu = m;
    }
    std::vector<Derivation> kids;
    for (const auto& c : n.children()) {
      std::map<std::string, std::string> cenv;
      std::map<Param, Param> cpenv;
      for (const auto& [x, _] : c.concl().free_vars())
        if (local.count(x)) cenv[x] = local.at(x);
      for (const auto& x : c.concl().params())
        if (plocal.count(x)) cpenv[x] = plocal.at(x);
      kids.push_back(run(c, cenv, cpenv));
    }
    return Derivation::make(std::move(s), n.rule(), std::move(p), std::move(kids));
  }
};

}  // namespace

Derivation rename_internal(const Derivation& pi) {
  Canon c;
  return c.run(pi, {}, {});
}

}  // namespace linc
