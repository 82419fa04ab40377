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

#include "linc/theory.hpp"

#include <functional>

namespace linc {

void Signature::add_kind(const std::string& name) {
  if (name == "o" || kinds_.count(name) || consts_.count(name))
    throw Error("DuplicateDeclaration", "type " + name + " is already declared");
  kinds_.insert(name);
  kind_order_.push_back(name);
}

bool Signature::well_formed(const Type& t) const {
  if (t.is_base()) return t.is_prop() || kinds_.count(t.name()) != 0;
  return well_formed(t.from()) && well_formed(t.to());
}

void Signature::add_const(const std::string& name, const Type& type) {
  if (is_logical_constant(name))
    throw Error("DuplicateDeclaration", name + " is a reserved connective");
  if (consts_.count(name) || kinds_.count(name))
    throw Error("DuplicateDeclaration", "constant " + name + " is already declared");
  if (!well_formed(type)) throw Error("UnknownType", "undeclared base type in " + type.str());
  bool predicate = type.target().is_prop();
  for (const auto& a : type.args())
    if (!a.is_efo()) predicate = false;
  if (!type.is_efo() && !predicate)
    throw Error("BadConstantType", name + " : " + type.str() +
                                       " is neither first-order data nor a predicate");
  consts_.emplace(name, type);
  const_order_.emplace_back(name, type);
}

const Type* Signature::find(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : &it->second;
}

std::vector<std::string> Signature::predicates() const {
  std::vector<std::string> out;
  for (const auto& [n, t] : const_order_)
    if (t.target().is_prop()) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------

void DefTable::add(DefClause clause) {
  index_.emplace(clause.pred, clauses_.size());
  clauses_.push_back(std::move(clause));
}

const DefClause* DefTable::find(const std::string& pred) const {
  auto it = index_.find(pred);
  return it == index_.end() ? nullptr : &clauses_[it->second];
}

Term DefTable::unfold(const std::string& pred, const Term& r, const std::vector<Term>& args) const {
  const DefClause* c = find(pred);
  if (!c) throw Error("UnknownPredicate", pred + " has no definition");
  std::vector<Term> all{r};
  all.insert(all.end(), args.begin(), args.end());
  return normalize(Term::apps(c->body, all), Type::prop());
}

namespace {

void collect_preds(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      if (t.type().target().is_prop() && !is_logical_constant(t.name())) out.insert(t.name());
      return;
    case TermKind::Lam:
      collect_preds(t.body(), out);
      return;
    case TermKind::App:
      collect_preds(t.fun(), out);
      collect_preds(t.arg(), out);
      return;
    default:
      return;
  }
}

std::vector<Term> fresh_args(const Type& ty) {
  std::vector<Term> out;
  for (const auto& a : ty.args()) out.push_back(Term::fvar(fresh_name("x"), a));
  return out;
}

}  // namespace

std::set<std::string> DefTable::dependencies(const std::string& pred) const {
  std::set<std::string> out;
  if (const DefClause* c = find(pred)) collect_preds(c->body, out);
  out.erase(pred);
  return out;
}

// ---------------------------------------------------------------------------

int size(const Term& f, const LevelMap& lvl) {
  FormulaView v = view(f);
  switch (v.kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Eq:
    case FormulaKind::ParamAtom:
      return 1;
    case FormulaKind::Pred: {
      auto it = lvl.find(v.head.name());
      if (it == lvl.end()) throw Error("UnknownPredicate", "no level for " + v.head.name());
      return it->second;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return size(v.left, lvl) + size(v.right, lvl) + 1;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return size(v.abs.body(), lvl) + 1;
  }
  return 1;
}

int body_size(const DefTable& d, const std::string& pred, const LevelMap& lvl) {
  const DefClause* c = d.find(pred);
  if (!c) throw Error("UnknownPredicate", pred + " has no definition");
  Term x = Term::param(Param{fresh_name("X"), pred}, c->type);
  return size(d.unfold(pred, x, fresh_args(c->type)), lvl);
}

namespace {

// Defined predicates in dependency order (dependencies first). Cycles are
// cut arbitrarily; validate_defs reports them.
std::vector<std::string> dependency_order(const DefTable& d) {
  std::vector<std::string> order;
  std::set<std::string> done, active;
  std::function<void(const std::string&)> visit = [&](const std::string& p) {
    if (done.count(p) || active.count(p) || !d.find(p)) return;
    active.insert(p);
    for (const auto& q : d.dependencies(p)) visit(q);
    active.erase(p);
    done.insert(p);
    order.push_back(p);
  };
  for (const auto& c : d.clauses()) visit(c.pred);
  return order;
}

// Tarjan's strongly connected components over the defined predicates.
std::vector<std::vector<std::string>> components(const DefTable& d) {
  std::map<std::string, int> index, low;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;
  std::function<void(const std::string&)> connect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : d.dependencies(v)) {
      if (!d.find(w)) continue;
      if (!index.count(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      out.push_back(std::move(comp));
    }
  };
  for (const auto& c : d.clauses())
    if (!index.count(c.pred)) connect(c.pred);
  return out;
}

}  // namespace

std::vector<Diagnostic> validate_defs(const DefTable& d) {
  std::vector<Diagnostic> out;
  auto report = [&](const DefClause& c, std::string code, std::string msg) {
    out.push_back(Diagnostic{std::move(code), c.pred, std::move(msg), c.line, c.col});
  };
  std::set<std::string> seen;
  bool structural_ok = true;
  for (const auto& c : d.clauses()) {
    if (!seen.insert(c.pred).second) {
      report(c, "DuplicateDefinition", "predicate " + c.pred + " is defined more than once");
      structural_ok = false;
      continue;
    }
    const Type* declared = d.sig.find(c.pred);
    if (!declared || *declared != c.type) {
      report(c, "UndeclaredPredicate", c.pred + " is not declared with type " + c.type.str());
      structural_ok = false;
    }
    if (!c.type.target().is_prop()) {
      report(c, "NotAPredicate", c.pred + " : " + c.type.str() + " does not produce formulas");
      structural_ok = false;
      continue;
    }
    try {
      Type bt = type_of(c.body);
      if (bt != Type::arrow(c.type, c.type)) {
        report(c, "IllTypedBody", "body has type " + bt.str());
        structural_ok = false;
      }
    } catch (const Error& e) {
      report(c, "IllTypedBody", e.what());
      structural_ok = false;
    }
    auto fv = free_vars(c.body);
    if (!fv.empty()) {
      report(c, "OpenBody", "body mentions free variable " + fv.begin()->first);
      structural_ok = false;
    }
    if (c.body.has_params()) {
      report(c, "ParameterInBody", "body of " + c.pred + " mentions parameter " +
                                       params_of(c.body).begin()->str());
      structural_ok = false;
    }
  }
  for (const auto& comp : components(d)) {
    if (comp.size() < 2) continue;
    std::string names;
    for (auto it = comp.rbegin(); it != comp.rend(); ++it) names += (names.empty() ? "" : ",") + *it;
    const DefClause* c = d.find(comp.back());
    report(*c, "MutualRecursion", "MutualRecursion(" + names + ")");
    structural_ok = false;
  }
  for (const auto& [p, n] : d.level_overrides) {
    auto span = d.level_spans.count(p) ? d.level_spans.at(p) : std::pair<int, int>{0, 0};
    Diagnostic diag{"BadLevel", p, "", span.first, span.second};
    if (!d.sig.find(p) || !d.sig.find(p)->target().is_prop()) {
      diag.message = "level given for unknown predicate " + p;
      out.push_back(diag);
    } else if (n < 1) {
      diag.message = "levels are positive";
      out.push_back(diag);
    }
  }
  if (!structural_ok) return out;
  // overrides must keep the size bound of every clause
  LevelMap lvl = assign_levels(d);
  for (const auto& c : d.clauses()) {
    auto it = d.level_overrides.find(c.pred);
    if (it == d.level_overrides.end()) continue;
    int need = body_size(d, c.pred, lvl);
    if (it->second <= need) {
      auto span = d.level_spans.count(c.pred) ? d.level_spans.at(c.pred) : std::pair<int, int>{0, 0};
      out.push_back(Diagnostic{"BadLevel", c.pred,
                               "level " + std::to_string(it->second) + " of " + c.pred +
                                   " must exceed the body size " + std::to_string(need),
                               span.first, span.second});
    }
  }
  return out;
}

LevelMap assign_levels(const DefTable& d) {
  LevelMap lvl;
  for (const auto& p : d.sig.predicates()) {
    auto it = d.level_overrides.find(p);
    lvl[p] = (it != d.level_overrides.end() && !d.find(p) && it->second >= 1) ? it->second : 1;
  }
  for (const auto& p : dependency_order(d)) {
    lvl.erase(p);
    // the clause's own level never enters its body size
    int computed = body_size(d, p, lvl) + 1;
    auto it = d.level_overrides.find(p);
    lvl[p] = (it != d.level_overrides.end() && it->second >= computed) ? it->second : computed;
  }
  return lvl;
}

namespace {

bool occurs_const(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::Const:
      return t.name() == name;
    case TermKind::Lam:
      return occurs_const(t.body(), name);
    case TermKind::App:
      return occurs_const(t.fun(), name) || occurs_const(t.arg(), name);
    default:
      return false;
  }
}

bool strictly_positive(const Term& f, const std::string& marker) {
  FormulaView v = view(f);
  switch (v.kind) {
    case FormulaKind::Imp:
      return !occurs_const(v.left, marker) && strictly_positive(v.right, marker);
    case FormulaKind::And:
    case FormulaKind::Or:
      return strictly_positive(v.left, marker) && strictly_positive(v.right, marker);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return strictly_positive(instance(v.abs, Term::fvar(fresh_name("y"), v.qtype)), marker);
    default:
      return true;
  }
}

}  // namespace

std::map<std::string, bool> is_stratified(const DefTable& d) {
  std::map<std::string, bool> out;
  for (const auto& p : d.sig.predicates()) out[p] = true;
  const std::string marker = "\x01self";
  for (const auto& p : dependency_order(d)) {
    const DefClause* c = d.find(p);
    bool ok = strictly_positive(d.unfold(p, Term::constant(marker, c->type), fresh_args(c->type)), marker);
    for (const auto& q : d.dependencies(p)) ok = ok && out[q];
    out[p] = ok;
  }
  return out;
}

Term subst_params(const Term& f, const std::map<Param, Term>& m) {
  try {
    return replace_params(f, m);
  } catch (const Error& e) {
    throw Error("TypeMismatch", e.what());
  }
}

}  // namespace linc
