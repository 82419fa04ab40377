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

#include "linc/search.hpp"

#include <algorithm>
#include <set>

#include "linc/formula.hpp"
#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/unify.hpp"

namespace linc {

namespace {

struct OutOfNodes {};

// Occurrence-ordered names, for a renaming-invariant key.
void occurrences(const Term& t, std::vector<std::string>& vars, std::vector<Param>& params) {
  switch (t.kind()) {
    case TermKind::FVar:
      if (std::find(vars.begin(), vars.end(), t.name()) == vars.end()) vars.push_back(t.name());
      return;
    case TermKind::Param:
      if (std::find(params.begin(), params.end(), t.param()) == params.end()) params.push_back(t.param());
      return;
    case TermKind::Lam:
      occurrences(t.body(), vars, params);
      return;
    case TermKind::App:
      occurrences(t.fun(), vars, params);
      occurrences(t.arg(), vars, params);
      return;
    default:
      return;
  }
}

std::string mask(const Term& f) {
  std::map<std::string, std::string> vm;
  std::map<Param, Param> pm;
  for (const auto& [x, ty] : free_vars(f)) vm.emplace(x, "_");
  std::set<Param> ps;
  collect_params(f, ps);
  for (const auto& p : ps) pm.emplace(p, Param{"_", p.pred});
  return show(rename_params(rename_vars(f, vm), pm));
}

std::string sequent_key(const Sequent& s) {
  std::vector<std::pair<std::string, Term>> left;
  for (const auto& f : s.left) left.emplace_back(mask(f), f);
  std::sort(left.begin(), left.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> vars;
  std::vector<Param> params;
  occurrences(s.right, vars, params);
  for (const auto& [m, f] : left) occurrences(f, vars, params);
  std::map<std::string, std::string> vm;
  std::map<Param, Param> pm;
  for (size_t i = 0; i < vars.size(); ++i) vm.emplace(vars[i], "v" + std::to_string(i));
  for (size_t i = 0; i < params.size(); ++i) pm.emplace(params[i], Param{"P" + std::to_string(i), params[i].pred});
  auto ren = [&](const Term& f) { return show(rename_params(rename_vars(f, vm), pm)); };
  std::string key = ren(s.right) + " <-";
  for (const auto& [m, f] : left) key += " ; " + ren(f);
  return key;
}

class Searcher {
 public:
  Searcher(const DefTable& d, const SearchBudget& b, const InvariantTable& inv) : d_(d), b_(b), inv_(inv) {}

  std::optional<Derivation> run(const Sequent& goal) {
    for (int depth = 1; depth <= b_.depth; ++depth) {
      ancestors_.clear();
      if (auto r = dfs(goal, depth, {})) return r;
    }
    return std::nullopt;
  }

  size_t nodes = 0;

 private:
  using Unfolds = std::map<std::string, int>;
  const DefTable& d_;
  const SearchBudget& b_;
  const InvariantTable& inv_;
  std::multiset<std::string> ancestors_;

  Derivation node(const Sequent& s, Rule r, Payload p, std::vector<Derivation> kids) {
    return Derivation::make(s, r, std::move(p), std::move(kids));
  }

  std::optional<Derivation> premise(const Sequent& s, int depth, const Unfolds& u) { return dfs(s, depth - 1, u); }

  // One rule instance whose premises are all searched.
  std::optional<Derivation> apply(const Sequent& s, Rule r, const Payload& p, int depth, const Unfolds& u) {
    std::vector<Sequent> prem;
    try {
      prem = expected_premises(d_, s, r, p);
    } catch (const Error& e) {
      if (e.code() == "NotAPattern") throw;
      return std::nullopt;
    }
    std::vector<Derivation> kids;
    for (const auto& q : prem) {
      auto k = premise(q, depth, u);
      if (!k) return std::nullopt;
      kids.push_back(*k);
    }
    return node(s, r, p, std::move(kids));
  }

  std::vector<Term> candidates(const Type& ty, const Sequent& s) {
    std::vector<Term> level0;
    for (const auto& [x, t] : s.free_vars())
      if (t == ty) level0.push_back(Term::fvar(x, t));
    std::vector<std::pair<std::string, Type>> fns;
    for (const auto& [c, t] : d_.sig.constants()) {
      if (t.target() != ty || !t.is_efo()) continue;
      if (t == ty)
        level0.push_back(Term::constant(c, t));
      else
        fns.emplace_back(c, t);
    }
    std::vector<Term> out = level0;
    std::vector<Term> layer = level0;
    for (int round = 0; round < 2 && out.size() < 24; ++round) {
      std::vector<Term> next;
      for (const auto& [c, t] : fns) {
        auto at = t.args();
        if (at.size() != 1 || at[0] != ty) continue;
        for (const auto& a : layer) next.push_back(normalize(Term::app(Term::constant(c, t), a), ty));
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    if (out.size() > 24) out.resize(24);
    return out;
  }

  std::optional<Derivation> dfs(const Sequent& s, int depth, Unfolds u) {
    if (depth <= 0) return std::nullopt;
    if (++nodes > b_.nodes) throw OutOfNodes{};
    std::string key = sequent_key(s);
    if (ancestors_.count(key)) return std::nullopt;
    ancestors_.insert(key);
    struct Pop {
      std::multiset<std::string>& a;
      std::string k;
      ~Pop() { a.erase(a.find(k)); }
    } pop{ancestors_, key};
    const Term& C = s.right;
    FormulaKind ck = kind_of(C);

    // axioms
    for (size_t i = 0; i < s.left.size(); ++i)
      if (s.left[i] == C) {
        Derivation leaf = node(Sequent{{C}, C}, Rule::Init, {}, {});
        return weaken_to(d_, leaf, s.left).reorder(s.left);
      }
    if (ck == FormulaKind::True) return node(s, Rule::TopR, {}, {});
    if (ck == FormulaKind::Eq) {
      FormulaView v = view(C);
      if (v.left == v.right) return node(s, Rule::EqR, {}, {});
    }
    for (size_t i = 0; i < s.left.size(); ++i) {
      FormulaKind k = kind_of(s.left[i]);
      Payload p;
      p.index = static_cast<int>(i);
      if (k == FormulaKind::False) return node(s, Rule::BotL, p, {});
      if (k == FormulaKind::Eq) {
        FormulaView v = view(s.left[i]);
        p.mgu = unify(v.left, v.right);
        return apply(s, Rule::EqL, p, depth, u);  // invertible
      }
      if (k == FormulaKind::True) return apply(s, Rule::WL, p, depth, u);
    }

    // invertible rules
    Payload none;
    switch (ck) {
      case FormulaKind::Imp:
        return apply(s, Rule::ImpR, none, depth, u);
      case FormulaKind::And:
        return apply(s, Rule::AndR, none, depth, u);
      case FormulaKind::Forall: {
        Payload p;
        p.term = Term::fvar(fresh_name("x"), view(C).qtype);
        return apply(s, Rule::ForallR, p, depth, u);
      }
      default:
        break;
    }
    for (size_t i = 0; i < s.left.size(); ++i) {
      FormulaKind k = kind_of(s.left[i]);
      Payload p;
      p.index = static_cast<int>(i);
      if (k == FormulaKind::Exists) {
        p.term = Term::fvar(fresh_name("x"), view(s.left[i]).qtype);
        return apply(s, Rule::ExistsL, p, depth, u);
      }
      if (k == FormulaKind::Or) return apply(s, Rule::OrL, p, depth, u);
      if (k == FormulaKind::And) return split_and(s, i, depth, u);
    }

    // choices
    if (ck == FormulaKind::Or) {
      if (auto r = apply(s, Rule::OrR1, none, depth, u)) return r;
      if (auto r = apply(s, Rule::OrR2, none, depth, u)) return r;
    }
    if (ck == FormulaKind::Exists) {
      for (const auto& w : candidates(view(C).qtype, s)) {
        Payload p;
        p.term = w;
        if (auto r = apply(s, Rule::ExistsR, p, depth, u)) return r;
      }
    }
    if (ck == FormulaKind::Pred || ck == FormulaKind::ParamAtom) {
      FormulaView v = view(C);
      std::string pred = ck == FormulaKind::Pred ? v.head.name() : v.head.param().pred;
      const DefClause* c = d_.find(pred);
      if (c && c->inductive() && u[pred] < b_.unfold) {
        Unfolds u2 = u;
        ++u2[pred];
        Payload p;
        if (ck == FormulaKind::Pred) p.param = Param{fresh_name("X"), pred};
        if (auto r = apply(s, ck == FormulaKind::Pred ? Rule::IR : Rule::IRp, p, depth, u2)) return r;
      }
      if (c && !c->inductive() && ck == FormulaKind::Pred) {
        auto [lo, hi] = inv_.equal_range(pred);
        for (auto it = lo; it != hi; ++it) {
          Payload p;
          p.invariant = it->second;
          for (const auto& t : c->type.args()) p.vars.push_back(Term::fvar(fresh_name("y"), t));
          if (auto r = apply(s, Rule::CIR, p, depth, u)) return r;
        }
      }
    }
    for (size_t i = 0; i < s.left.size(); ++i) {
      const Term& f = s.left[i];
      FormulaKind k = kind_of(f);
      Payload p;
      p.index = static_cast<int>(i);
      if (k == FormulaKind::Imp) {
        if (auto r = apply(s, Rule::ImpL, p, depth, u)) return r;
      } else if (k == FormulaKind::Forall) {
        for (const auto& w : candidates(view(f).qtype, s)) {
          p.term = w;
          if (auto r = apply(s, Rule::ForallL, p, depth, u)) return r;
        }
      } else if (k == FormulaKind::Pred || k == FormulaKind::ParamAtom) {
        FormulaView v = view(f);
        std::string pred = k == FormulaKind::Pred ? v.head.name() : v.head.param().pred;
        const DefClause* c = d_.find(pred);
        if (!c) continue;
        if (c->inductive() && k == FormulaKind::Pred) {
          auto [lo, hi] = inv_.equal_range(pred);
          for (auto it = lo; it != hi; ++it) {
            Payload q = p;
            q.invariant = it->second;
            for (const auto& t : c->type.args()) q.vars.push_back(Term::fvar(fresh_name("y"), t));
            if (auto r = apply(s, Rule::IL, q, depth, u)) return r;
          }
        } else if (!c->inductive() && u[pred] < b_.unfold) {
          Unfolds u2 = u;
          ++u2[pred];
          Payload q = p;
          if (k == FormulaKind::Pred) q.param = Param{fresh_name("X"), pred};
          if (auto r = apply(s, k == FormulaKind::Pred ? Rule::CIL : Rule::CILp, q, depth, u2)) return r;
        }
      }
    }
    return std::nullopt;
  }

  // cL, then andL1 on the original and andL2 on the copy.
  std::optional<Derivation> split_and(const Sequent& s, size_t i, int depth, const Unfolds& u) {
    FormulaView v = view(s.left[i]);
    auto l1 = s.left;
    l1.push_back(s.left[i]);
    auto l2 = replace_at(l1, i, v.left);
    auto l3 = replace_at(l2, l2.size() - 1, v.right);
    auto top = premise(Sequent{l3, s.right}, depth, u);
    if (!top) return std::nullopt;
    Payload p2;
    p2.index = static_cast<int>(l2.size() - 1);
    Derivation n2 = node(Sequent{l2, s.right}, Rule::AndL2, p2, {*top});
    Payload p1;
    p1.index = static_cast<int>(i);
    Derivation n1 = node(Sequent{l1, s.right}, Rule::AndL1, p1, {n2});
    return node(s, Rule::CL, p1, {n1});
  }
};

}  // namespace

std::optional<Derivation> bounded_search(const DefTable& d, const Sequent& goal, const SearchBudget& b,
                                         const InvariantTable& invariants, SearchStats* stats) {
  if (b.depth <= 0 || b.unfold <= 0 || b.nodes == 0)
    throw Error("InvalidBudget", "search budget bounds must be positive");
  Searcher s(d, b, invariants);
  std::optional<Derivation> r;
  bool exhausted = false;
  try {
    r = s.run(goal);
  } catch (const OutOfNodes&) {
    exhausted = true;
  }
  if (stats) {
    stats->nodes = s.nodes;
    stats->exhausted = exhausted;
  }
  if (r) {
    CheckReport rep = check(d, *r);
    if (!rep.ok) throw Error("InternalError", "search produced an invalid derivation: " + rep.violations[0].message);
  }
  return r;
}

}  // namespace linc
