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

#include "linc/reduce.hpp"

#include <cstdlib>
#include <functional>

#include "linc/formula.hpp"
#include "linc/kernel.hpp"
#include "linc/transform.hpp"
#include "linc/unify.hpp"

namespace linc {

const char* family_name(CaseFamily f) {
  switch (f) {
    case CaseFamily::Essential: return "essential";
    case CaseFamily::LeftCommutative: return "left-commutative";
    case CaseFamily::RightCommutative: return "right-commutative";
    case CaseFamily::Multicut: return "multicut";
    case CaseFamily::Structural: return "structural";
    case CaseFamily::Axiom: return "axiom";
  }
  return "?";
}

namespace {

[[noreturn]] void internal(const std::string& msg) { throw Error("InternalError", "reduce: " + msg); }

using CutList = std::vector<std::pair<Derivation, int>>;
using Reducts = std::vector<std::pair<ReductionStep, Derivation>>;

Derivation mcx(const DefTable& d, const CutList& cl, const Derivation& main) {
  if (cl.empty()) return main;
  std::vector<Derivation> ps;
  std::vector<int> cuts;
  for (const auto& [p, c] : cl) {
    ps.push_back(p);
    cuts.push_back(c);
  }
  return make_mc(d, std::move(ps), main, std::move(cuts));
}

// Where position c of a conclusion lands in the canonical premise j.
int through(Rule r, size_t j, int k, int c) {
  bool erase = r == Rule::WL || r == Rule::EqL || (r == Rule::ImpL && j == 0);
  if (erase && k >= 0) {
    if (c == k) return -1;
    return c > k ? c - 1 : c;
  }
  return c;
}

// Positions of the canonical premise j of n, moved to the actual child.
std::vector<int> to_child(const DefTable& d, const Derivation& n, size_t j, const std::vector<int>& pos) {
  auto exp = expected_premises(d, n.concl(), n.rule(), n.payload());
  auto perm = align(exp.at(j).left, n.child(j).concl().left);
  if (!perm) internal("premise does not match its rule");
  std::vector<int> out;
  for (int p : pos) out.push_back(static_cast<int>((*perm)[static_cast<size_t>(p)]));
  return out;
}
int to_child(const DefTable& d, const Derivation& n, size_t j, int pos) {
  return to_child(d, n, j, std::vector<int>{pos})[0];
}

// Renames what the root of n introduces away from the names of ctx.
Derivation fresh_root(const Derivation& n, const Sequent& ctx) {
  auto fv = ctx.free_vars();
  auto ps = ctx.params();
  std::map<std::string, std::string> vm;
  std::map<Param, Param> pm;
  for (const auto& x : introduced_vars(n))
    if (fv.count(x)) vm.emplace(x, fresh_name(x));
  for (const auto& x : introduced_params(n))
    if (ps.count(x)) pm.emplace(x, Param{fresh_name(x.name), x.pred});
  if (vm.empty() && pm.empty()) return n;
  return rename_derivation(n, vm, pm);
}

Subst single(const Term& var, const Term& value) {
  Subst s;
  s.bind(var.name(), var.type(), value);
  return s;
}

Subst bind_vars(const std::vector<Term>& vars, const std::vector<Term>& values) {
  Subst s;
  for (size_t i = 0; i < vars.size(); ++i) s.bind(vars[i].name(), vars[i].type(), values.at(i));
  return s;
}

struct Redex {
  const DefTable& d;
  Derivation xi;
  std::vector<Derivation> cps;
  std::vector<int> cuts;
  Derivation main;
  std::vector<Term> X;  // Δ1, ..., Δn, Γ
  std::vector<size_t> offset;
  size_t ndelta = 0;

  Redex(const DefTable& defs, const Derivation& x) : d(defs), xi(x) {
    if (x.rule() != Rule::MC) throw Error("NotARedex", "reducts: the derivation does not end in mc");
    cps.assign(x.children().begin(), x.children().end() - 1);
    main = x.children().back();
    cuts = x.payload().cuts;
    for (const auto& p : cps) {
      offset.push_back(X.size());
      X.insert(X.end(), p.concl().left.begin(), p.concl().left.end());
    }
    ndelta = X.size();
    for (size_t j = 0; j < main.concl().left.size(); ++j)
      if (cut_of(static_cast<int>(j)) < 0) X.push_back(main.concl().left[j]);
  }

  size_t n() const { return cps.size(); }
  int cut_of(int k) const {
    for (size_t i = 0; i < cuts.size(); ++i)
      if (cuts[i] == k) return static_cast<int>(i);
    return -1;
  }
  int x_pos_noncut(int k) const {
    size_t p = ndelta;
    for (int j = 0; j < k; ++j)
      if (cut_of(j) < 0) ++p;
    return static_cast<int>(p);
  }
  Sequent goal() const { return Sequent{X, main.concl().right}; }

  // Cut premises for main's child j, with premise i replaced by `repl`
  // (dropped when repl is invalid, untouched when i < 0).
  CutList into_child(size_t j, int i, const Derivation& repl, int repl_pos) const {
    int k = main.payload().index;
    std::vector<int> pos;
    for (size_t m = 0; m < n(); ++m)
      if (static_cast<int>(m) != i) pos.push_back(through(main.rule(), j, k, cuts[m]));
    auto mapped = to_child(d, main, j, pos);
    CutList cl;
    size_t q = 0;
    for (size_t m = 0; m < n(); ++m) {
      if (static_cast<int>(m) == i) {
        if (repl.valid()) cl.emplace_back(repl, repl_pos);
      } else {
        cl.emplace_back(cps[m], mapped[q++]);
      }
    }
    return cl;
  }
  // Same cut positions in main, with premise i replaced or dropped.
  CutList in_place(int i, const Derivation& repl) const {
    CutList cl;
    for (size_t m = 0; m < n(); ++m) {
      if (static_cast<int>(m) == i) {
        if (repl.valid()) cl.emplace_back(repl, cuts[m]);
      } else {
        cl.emplace_back(cps[m], cuts[m]);
      }
    }
    return cl;
  }

  Derivation finish(const Derivation& r) const { return r.reorder(xi.concl().left); }

  // ---------------------------------------------------------------- essential

  Derivation essential(int i) const {
    const Derivation& pi = cps[static_cast<size_t>(i)];
    int k = main.payload().index;
    Rule L = main.rule();
    switch (pi.rule()) {
      case Rule::AndR: {
        size_t c = L == Rule::AndL1 ? 0 : 1;
        auto cl = into_child(0, i, pi.child(c), to_child(d, main, 0, k));
        return mcx(d, cl, main.child(0));
      }
      case Rule::OrR1:
      case Rule::OrR2: {
        size_t j = pi.rule() == Rule::OrR1 ? 0 : 1;
        auto cl = into_child(j, i, pi.child(0), to_child(d, main, j, k));
        return mcx(d, cl, main.child(j));
      }
      case Rule::ImpR: {
        // Π1' : Δ1, B' ⊢ B''   Π' : Γ ⊢ B'   Π'' : Γ, B'' ⊢ C
        const Derivation& p1 = pi.child(0);
        auto e1 = expected_premises(d, pi.concl(), pi.rule(), pi.payload());
        auto perm = align(e1[0].left, p1.concl().left);
        if (!perm) internal("impR premise");
        int bpos = static_cast<int>((*perm)[pi.concl().left.size()]);
        Derivation inner = mcx(d, into_child(0, i, Derivation(), 0), main.child(0));
        Derivation xi1 = mcx(d, {{inner, bpos}}, p1);
        auto cl = into_child(1, i, Derivation(), 0);
        cl.insert(cl.begin(), {xi1, to_child(d, main, 1, k)});
        Derivation r = mcx(d, cl, main.child(1));
        return contract_to(d, r, xi.concl().left);
      }
      case Rule::ForallR: {
        Derivation inst = subst_derivation(d, pi.child(0), single(pi.payload().term, main.payload().term));
        auto cl = into_child(0, i, inst, to_child(d, main, 0, k));
        return mcx(d, cl, main.child(0));
      }
      case Rule::ExistsR: {
        Derivation body = subst_derivation(d, main.child(0), single(main.payload().term, pi.payload().term));
        auto cl = into_child(0, i, pi.child(0), to_child(d, main, 0, k));
        return mcx(d, cl, body);
      }
      case Rule::IR: {
        ParamBinding b{main.child(0), main.payload().invariant, main.payload().vars};
        Derivation a = param_subst_derivation(d, pi.child(0), ParamSubst{{*pi.payload().param, b}});
        auto ts = view(main.concl().left[static_cast<size_t>(k)]).args;
        Derivation inst = subst_derivation(d, b.proof, bind_vars(b.vars, ts));
        Derivation inner = mcx(d, {{a, 0}}, inst);
        auto cl = into_child(1, i, inner, to_child(d, main, 1, k));
        return mcx(d, cl, main.child(1));
      }
      case Rule::CIR: {
        ParamBinding b{pi.child(1), pi.payload().invariant, pi.payload().vars};
        auto ts = view(main.concl().left[static_cast<size_t>(k)]).args;
        Derivation inst = subst_derivation(d, b.proof, bind_vars(b.vars, ts));
        Derivation inner = mcx(d, {{pi.child(0), 0}}, inst);
        Derivation body = param_subst_derivation(d, main.child(0), ParamSubst{{*main.payload().param, b}});
        auto cl = into_child(0, i, inner, to_child(d, main, 0, k));
        return mcx(d, cl, body);
      }
      case Rule::EqR: {
        const Sequent& s = main.concl();
        Derivation inst;
        if (!main.children().empty()) {
          const Subst& sigma = *main.payload().mgu;
          auto dom = s.free_vars();
          for (const auto& [x, e] : sigma) dom.emplace(x, e.type);
          TermPairs pairs;
          for (const auto& [y, ty] : dom) {
            Term v = Term::fvar(y, ty);
            pairs.emplace_back(apply(v, sigma), v);
          }
          auto delta = match_all(pairs);
          if (!delta) internal("eqL over a reflexive equation has a non-renaming unifier");
          inst = subst_derivation(d, main.child(0), *delta);
        } else {
          internal("eqL over s = s without a premise");
        }
        Derivation sub = derive(d, Sequent{erase_at(s.left, static_cast<size_t>(k)), s.right}, Rule::Subst, {}, {inst});
        CutList cl;
        for (size_t m = 0; m < n(); ++m)
          if (static_cast<int>(m) != i) cl.emplace_back(cps[m], through(Rule::EqL, 0, k, cuts[m]));
        return weaken_to(d, mcx(d, cl, sub), xi.concl().left);
      }
      default:
        internal(std::string("no essential case for ") + rule_name(pi.rule()) + "/" + rule_name(L));
    }
  }

  // --------------------------------------------------------- left-commutative

  Derivation left_commute(int i) const {
    Derivation pi = fresh_root(cps[static_cast<size_t>(i)], xi.concl());
    Payload p = pi.payload();
    if (p.index >= 0) p.index += static_cast<int>(offset[static_cast<size_t>(i)]);
    Sequent g = goal();
    switch (pi.rule()) {
      case Rule::Subst:
        return derive(d, g, Rule::Subst, p, {mcx(d, in_place(i, pi.child(0)), main)});
      case Rule::EqL: {
        if (pi.children().empty()) return derive(d, g, Rule::EqL, p, {});
        const Subst& sigma = *p.mgu;
        CutList cl;
        for (size_t m = 0; m < n(); ++m)
          cl.emplace_back(static_cast<int>(m) == i ? pi.child(0) : subst_derivation(d, cps[m], sigma), cuts[m]);
        return derive(d, g, Rule::EqL, p, {mcx(d, cl, subst_derivation(d, main, sigma))});
      }
      default: {
        std::vector<Derivation> kids;
        for (size_t j = 0; j < pi.children().size(); ++j) {
          if (pi.rule() == Rule::IL && j == 0) {
            kids.push_back(pi.child(0));
          } else if (pi.rule() == Rule::ImpL && j == 0) {
            kids.push_back(weaken_to(d, pi.child(0), erase_at(g.left, static_cast<size_t>(p.index))));
          } else {
            kids.push_back(mcx(d, in_place(i, pi.child(j)), main));
          }
        }
        return derive(d, g, pi.rule(), p, std::move(kids));
      }
    }
  }

  // -------------------------------------------------------- right-commutative

  Derivation right_commute() const {
    Derivation m = fresh_root(main, xi.concl());
    Redex r(d, xi.with_children([&] {
      auto ks = cps;
      ks.push_back(m);
      return ks;
    }()));
    Payload p = m.payload();
    if (is_left_rule(m.rule())) p.index = r.x_pos_noncut(p.index);
    Sequent g = goal();
    if (m.rule() == Rule::EqL) {
      if (m.children().empty()) return derive(d, g, Rule::EqL, p, {});
      const Subst& sigma = *p.mgu;
      auto cl = r.into_child(0, -1, Derivation(), 0);
      for (auto& [c, pos] : cl) c = subst_derivation(d, c, sigma);
      return derive(d, g, Rule::EqL, p, {mcx(d, cl, m.child(0))});
    }
    std::vector<Derivation> kids;
    for (size_t j = 0; j < m.children().size(); ++j) {
      bool side = (m.rule() == Rule::IL && j == 0) || (m.rule() == Rule::CIR && j == 1);
      kids.push_back(side ? m.child(j) : mcx(d, r.into_child(j, -1, Derivation(), 0), m.child(j)));
    }
    return derive(d, g, m.rule(), p, std::move(kids));
  }

  // ------------------------------------------------------------------ -/mc

  Derivation distribute() const {
    // main = mc(Π^1..Π^m, Π'); its left side is Δ^1, ..., Δ^m, rest.
    std::vector<Derivation> inner(main.children().begin(), main.children().end() - 1);
    const Derivation& body = main.children().back();
    const auto& ecuts = main.payload().cuts;
    std::vector<Term> canon;
    std::vector<std::pair<int, int>> where;  // (segment or -1, position within)
    for (size_t j = 0; j < inner.size(); ++j)
      for (size_t q = 0; q < inner[j].concl().left.size(); ++q) {
        canon.push_back(inner[j].concl().left[q]);
        where.emplace_back(static_cast<int>(j), static_cast<int>(q));
      }
    for (size_t q = 0; q < body.concl().left.size(); ++q) {
      bool is_cut = false;
      for (int c : ecuts) is_cut |= c == static_cast<int>(q);
      if (is_cut) continue;
      canon.push_back(body.concl().left[q]);
      where.emplace_back(-1, static_cast<int>(q));
    }
    auto perm = align(canon, main.concl().left);
    if (!perm) internal("mc conclusion");
    std::vector<size_t> inv(perm->size());
    for (size_t e = 0; e < perm->size(); ++e) inv[(*perm)[e]] = e;
    std::vector<CutList> per(inner.size());
    CutList outer;
    std::vector<std::pair<Derivation, int>> rest;
    for (size_t i = 0; i < n(); ++i) {
      auto [seg, q] = where[inv[static_cast<size_t>(cuts[i])]];
      if (seg >= 0)
        per[static_cast<size_t>(seg)].emplace_back(cps[i], q);
      else
        rest.emplace_back(cps[i], q);
    }
    for (size_t j = 0; j < inner.size(); ++j) outer.emplace_back(mcx(d, per[j], inner[j]), ecuts[j]);
    outer.insert(outer.end(), rest.begin(), rest.end());
    return mcx(d, outer, body);
  }

  // ----------------------------------------------------------- structural

  Derivation contraction(int i) const {
    int m = static_cast<int>(main.concl().left.size());
    std::vector<int> pos;
    for (size_t q = 0; q < n(); ++q) pos.push_back(cuts[q]);
    pos.push_back(m);
    auto mapped = to_child(d, main, 0, pos);
    CutList cl;
    for (size_t q = 0; q < n(); ++q) {
      cl.emplace_back(cps[q], mapped[q]);
      if (static_cast<int>(q) == i) cl.emplace_back(cps[q], mapped.back());
    }
    return contract_to(d, mcx(d, cl, main.child(0)), xi.concl().left);
  }

  Derivation weakening(int i) const {
    return weaken_to(d, mcx(d, into_child(0, i, Derivation(), 0), main.child(0)), xi.concl().left);
  }
};

std::string ess_name(Rule r, Rule l) { return std::string(rule_name(r)) + "/" + rule_name(l); }

bool matching_pair(Rule r, Rule l) {
  switch (r) {
    case Rule::AndR: return l == Rule::AndL1 || l == Rule::AndL2;
    case Rule::OrR1:
    case Rule::OrR2: return l == Rule::OrL;
    case Rule::ImpR: return l == Rule::ImpL;
    case Rule::ForallR: return l == Rule::ForallL;
    case Rule::ExistsR: return l == Rule::ExistsL;
    case Rule::IR: return l == Rule::IL;
    case Rule::CIR: return l == Rule::CIL;
    case Rule::EqR: return l == Rule::EqL;
    default: return false;
  }
}

}  // namespace

std::vector<std::pair<ReductionStep, Derivation>> reducts(const DefTable& d, const Derivation& xi) {
  Redex r(d, xi);
  Reducts out;
  auto emit = [&](CaseFamily f, std::string name, int i, const Derivation& res) {
    out.push_back({ReductionStep{{}, f, std::move(name), i}, r.finish(res)});
  };
  if (r.n() == 0) {
    emit(CaseFamily::Axiom, "mc0", -1, r.main);
    return out;
  }
  const Derivation& m = r.main;
  int k = is_left_rule(m.rule()) ? m.payload().index : -1;
  int i = k >= 0 ? r.cut_of(k) : -1;
  if (i >= 0) {
    if (m.rule() == Rule::CL) {
      emit(CaseFamily::Structural, "-/cL", i, r.contraction(i));
      return out;
    }
    if (m.rule() == Rule::WL) {
      emit(CaseFamily::Structural, "-/wL", i, r.weakening(i));
      return out;
    }
    const Derivation& pi = r.cps[static_cast<size_t>(i)];
    Rule pr = pi.rule();
    if (is_right_rule(pr)) {
      if (!matching_pair(pr, m.rule())) internal("mismatched principal rules " + ess_name(pr, m.rule()));
      emit(CaseFamily::Essential, ess_name(pr, m.rule()), i, r.essential(i));
    } else if (pr == Rule::Init) {
      emit(CaseFamily::Axiom, "init/oL", i, r.in_place(i, Derivation()).empty() ? m : mcx(d, r.in_place(i, Derivation()), m));
    } else if (pr == Rule::MC) {
      for (auto& [st, red] : reducts(d, pi)) {
        (void)st;
        emit(CaseFamily::Multicut, "mc/oL", i, mcx(d, r.in_place(i, red), m));
      }
    } else {
      emit(CaseFamily::LeftCommutative, std::string(rule_name(pr)) + "/oL", i, r.left_commute(i));
    }
    return out;
  }
  switch (m.rule()) {
    case Rule::Init:
      emit(CaseFamily::Axiom, "-/init", 0, r.cps[0]);
      break;
    case Rule::MC:
      emit(CaseFamily::Multicut, "-/mc", -1, r.distribute());
      break;
    case Rule::Subst:
      emit(CaseFamily::RightCommutative, "-/subst", -1, r.right_commute());
      break;
    case Rule::CIR:
      emit(CaseFamily::RightCommutative, "-/CIR", -1, r.right_commute());
      break;
    case Rule::ImpL:
    case Rule::IL:
    case Rule::EqL:
      emit(CaseFamily::RightCommutative, std::string("-/") + rule_name(m.rule()), -1, r.right_commute());
      break;
    default:
      emit(CaseFamily::RightCommutative, is_right_rule(m.rule()) ? "-/oR" : "-/oL", -1, r.right_commute());
      break;
  }
  return out;
}

namespace {

// Deepest mc node, leftmost among equally deep ones.
std::optional<std::vector<int>> innermost_mc(const Derivation& pi) {
  std::optional<std::vector<int>> best;
  size_t best_depth = 0;
  std::vector<int> path;
  std::function<void(const Derivation&)> go = [&](const Derivation& n) {
    if (n.cut_free()) return;
    if (n.rule() == Rule::MC && (!best || path.size() > best_depth)) {
      best = path;
      best_depth = path.size();
    }
    for (size_t j = 0; j < n.children().size(); ++j) {
      path.push_back(static_cast<int>(j));
      go(n.child(j));
      path.pop_back();
    }
  };
  go(pi);
  return best;
}

}  // namespace

std::optional<std::pair<ReductionStep, Derivation>> step(const DefTable& d, const Derivation& pi, Strategy) {
  auto path = innermost_mc(pi);
  if (!path) return std::nullopt;
  auto rs = reducts(d, at_path(pi, *path));
  if (rs.empty()) internal("mc without a reduct");
  auto [st, red] = rs.front();
  st.path = *path;
  return std::make_pair(st, replace_at_path(pi, *path, red));
}

size_t default_fuel() {
  if (const char* e = std::getenv("LINC_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end != e && *end == '\0') return static_cast<size_t>(v);
  }
  return 100000;
}

NormalizeResult normalize(const DefTable& d, const Derivation& pi, size_t fuel) {
  Trace tr;
  tr.initial = pi.concl();
  Derivation cur = pi;
  while (!cur.cut_free()) {
    if (tr.steps.size() >= fuel) {
      tr.final = cur.concl();
      tr.final_size = cur.size();
      throw FuelExhausted(std::move(tr), cur);
    }
    auto s = step(d, cur);
    if (!s) break;
    cur = s->second;
    tr.steps.push_back(TraceEntry{s->first, cur.size()});
  }
  cur = eliminate_subst(cur);
  tr.final = cur.concl();
  tr.final_size = cur.size();
  return NormalizeResult{cur, std::move(tr)};
}

bool is_cut_free(const Derivation& pi) { return pi.cut_free(); }
bool is_subst_free(const Derivation& pi) { return pi.subst_free(); }

}  // namespace linc
