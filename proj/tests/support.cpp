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


#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <set>
#include <unordered_map>

#include "linc/formula.hpp"
#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/search.hpp"
#include "linc/syntax.hpp"

#ifndef LINC_CORPUS_DIR
#error "LINC_CORPUS_DIR must be defined"
#endif

namespace linc::testkit {

namespace fs = std::filesystem;

std::string corpus_dir() { return LINC_CORPUS_DIR; }

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".lnc") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

const Theory& corpus(const std::string& file) {
  static std::map<std::string, std::unique_ptr<Theory>> cache;
  std::string path = fs::path(file).is_absolute() ? file : corpus_dir() + "/" + file;
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, std::make_unique<Theory>(load_theory(path))).first;
  return *it->second;
}

Term term(const DefTable& d, const std::string& text, const Type& ty,
          const std::map<std::string, Type>& vars) {
  return elaborate_term(d, parse_term_text(text), ty, vars, true);
}

Derivation prove(const Theory& th, const std::string& sequent, const std::string& script) {
  return elaborate_script(th, read_sequent(th.defs, sequent), parse_script_text(script));
}

std::vector<Derivation> subderivations(const Derivation& d) {
  std::vector<Derivation> out;
  std::vector<Derivation> todo{d};
  while (!todo.empty()) {
    Derivation n = todo.back();
    todo.pop_back();
    out.push_back(n);
    const auto& ch = n.children();
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) todo.push_back(*it);
  }
  return out;
}

std::map<std::string, Type> typed_names(const Derivation& d) {
  std::map<std::string, Type> out;
  for (const auto& n : subderivations(d)) {
    auto fv = n.concl().free_vars();
    out.insert(fv.begin(), fv.end());
    if (n.payload().term.valid()) {
      auto more = free_vars(n.payload().term);
      out.insert(more.begin(), more.end());
    }
  }
  return out;
}

// Gen -----------------------------------------------------------------

Term Gen::term_of(const DefTable& d, const Type& ty, const std::map<std::string, Type>& vars, int depth) {
  if (ty.is_arrow()) {
    std::string u = fresh_name("u");
    auto inner = vars;
    inner[u] = ty.from();
    Term body = term_of(d, ty.to(), inner, depth);
    return normalize(abstract_var(body, u, ty.from()), ty);
  }
  std::vector<Term> heads;
  for (const auto& [x, t] : vars)
    if (t == ty) heads.push_back(Term::fvar(x, t));
  for (const auto& [c, t] : d.sig.constants()) {
    if (t.target() != ty || t.target().is_prop()) continue;
    if (depth <= 0 && t.arity() > 0) continue;
    heads.push_back(Term::constant(c, t));
  }
  if (heads.empty() || coin(0.1)) return Term::fvar(fresh_name("w"), ty);
  Term h = heads[below(heads.size())];
  std::vector<Term> args;
  for (const Type& a : h.type().args()) args.push_back(term_of(d, a, vars, depth - 1));
  return normalize(Term::apps(h, args), ty);
}

Subst Gen::subst(const DefTable& d, const std::map<std::string, Type>& domain,
                 const std::map<std::string, Type>& capture) {
  std::map<std::string, Type> pool = domain;
  pool.insert(capture.begin(), capture.end());
  Subst s;
  auto bind = [&](const std::string& x, const Type& t) {
    if (!t.is_efo()) return;
    s.bind(x, t, term_of(d, t, pool, static_cast<int>(below(3))));
  };
  for (const auto& [x, t] : domain)
    if (coin(0.8)) bind(x, t);
  // Variables bound inside the derivation must be left alone.
  for (const auto& [x, t] : capture)
    if (!domain.count(x) && coin(0.2)) bind(x, t);
  return s;
}

Derivation canon(const DefTable& d, const Derivation& pi) { return rename_internal(canonical_order(d, pi)); }

Sequent apply_sequent(const Sequent& s, const Subst& theta) {
  Sequent out;
  for (const auto& f : s.left) out.left.push_back(apply(f, theta));
  out.right = apply(s.right, theta);
  return out;
}

// Pools ---------------------------------------------------------------

namespace {

std::string base(const std::string& path) { return fs::path(path).filename().string(); }

struct DerivKey {
  size_t operator()(const Derivation& d) const { return d.hash(); }
};

void add_unique(std::vector<Sample>& out, std::unordered_map<Derivation, bool, DerivKey>& seen, Sample s) {
  if (seen.emplace(s.d, true).second) out.push_back(std::move(s));
}

std::string path_str(const std::vector<int>& p) {
  std::string s;
  for (int i : p) s += "/" + std::to_string(i);
  return s;
}

}  // namespace

std::vector<Sample> corpus_proofs() {
  std::vector<Sample> out;
  for (const auto& f : corpus_files()) {
    const Theory& th = corpus(f);
    for (const auto& p : th.proofs)
      if (p.ok()) out.push_back({base(f) + ":" + p.name, &th, p.proof});
  }
  return out;
}

std::vector<Sample> mc_roots() {
  std::vector<Sample> out;
  for (auto& s : corpus_proofs())
    if (s.d.rule() == Rule::MC) out.push_back(s);
  return out;
}

std::vector<Sample> lemma_pool() {
  std::vector<Sample> out;
  std::unordered_map<Derivation, bool, DerivKey> seen;
  for (auto& root : corpus_proofs()) {
    add_unique(out, seen, root);
    for (const auto& n : subderivations(root.d)) {
      const Sequent& s = n.concl();
      if (s.free_vars().empty() && s.params().empty()) continue;
      add_unique(out, seen, {root.origin + "/sub", root.theory, n});
    }
  }
  return out;
}

std::vector<Sample> redex_pool() {
  std::vector<Sample> out;
  std::unordered_map<Derivation, bool, DerivKey> seen;
  for (auto& root : corpus_proofs()) {
    if (root.d.cut_free()) continue;
    if (root.d.rule() == Rule::MC) add_unique(out, seen, root);
    Derivation cur = root.d;
    for (size_t n = 0; n < 2000; ++n) {
      auto st = step(root.theory->defs, cur);
      if (!st) break;
      add_unique(out, seen, {root.origin + path_str(st->first.path), root.theory, at_path(cur, st->first.path)});
      cur = st->second;
    }
  }
  return out;
}

// Invariant bindings --------------------------------------------------

namespace {

Term closed_lambda(const Type& ty, const Term& body) {
  Term t = body;
  auto args = ty.args();
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = Term::lam("x", *it, t);
  return t;
}

}  // namespace

std::vector<ParamBinding> bindings_for(const Theory& th, const std::string& pred) {
  static std::map<std::pair<const Theory*, std::string>, std::vector<ParamBinding>> cache;
  auto key = std::make_pair(&th, pred);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<ParamBinding> out;
  const DefClause* c = th.defs.find(pred);
  if (c) {
    std::vector<Term> cands{closed_lambda(c->type, mk_true()), closed_lambda(c->type, mk_false())};
    for (const auto& inv : th.invariants)
      if (inv.pred == pred) cands.push_back(inv.term);
    for (const Term& s : cands) {
      std::vector<Term> ys;
      for (const Type& a : c->type.args()) ys.push_back(Term::fvar(fresh_name("y"), a));
      Term sy = normalize(Term::apps(s, ys), Type::prop());
      Term body = th.defs.unfold(pred, s, ys);
      Sequent goal = c->inductive() ? Sequent{{body}, sy} : Sequent{{sy}, body};
      SearchBudget b;
      b.nodes = 20000;
      auto pf = bounded_search(th.defs, goal, b);
      if (pf) out.push_back({*pf, s, ys});
    }
  }
  cache[key] = out;
  return out;
}

// Properties ----------------------------------------------------------

namespace {

std::uint64_t seed_for(const Sample& s, std::uint64_t seed) {
  return std::hash<std::string>{}(s.origin) ^ (seed * 0x9e3779b97f4a7c15ULL) ^ s.d.hash();
}

std::map<std::string, Type> capture_of(const Derivation& d) {
  auto names = typed_names(d);
  for (const auto& [x, t] : d.concl().free_vars()) names.erase(x);
  return names;
}

std::string describe(const Sample& s, const Subst& theta) { return s.origin + " under " + show(theta); }

template <class F>
void guarded(PropertyResult& r, const std::string& what, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    r.fail(what + ": " + e.code() + ": " + e.what());
  } catch (const std::exception& e) {
    r.fail(what + ": " + e.what());
  }
}

ParamSubst random_theta(Gen& g, const Sample& s) {
  ParamSubst th;
  for (const Param& p : s.d.concl().params()) {
    auto bs = bindings_for(*s.theory, p.pred);
    if (bs.empty()) continue;
    th[p] = bs[g.below(bs.size())];
  }
  return th;
}

}  // namespace

PropertyResult lemma_subst_checks(const std::vector<Sample>& pool, const LemmaOptions& o) {
  PropertyResult r;
  for (const auto& s : pool) {
    const DefTable& d = s.theory->defs;
    Gen g(seed_for(s, o.seed));
    auto dom = s.d.concl().free_vars();
    auto cap = capture_of(s.d);
    for (size_t i = 0; i < o.substitutions; ++i) {
      Subst theta = g.subst(d, dom, cap);
      ++r.cases;
      guarded(r, describe(s, theta), [&] {
        Derivation out = subst_derivation(d, s.d, theta);
        auto rep = check(d, out);
        if (!rep.ok) r.fail(describe(s, theta) + ": " + rep.violations.front().code + " " + rep.violations.front().message);
        else if (!(out.concl() == apply_sequent(s.d.concl(), theta)))
          r.fail(describe(s, theta) + ": end sequent " + show(out.concl()));
      });
    }
  }
  return r;
}

PropertyResult lemma_height(const std::vector<Sample>& pool, const LemmaOptions& o) {
  PropertyResult r;
  for (const auto& s : pool) {
    const DefTable& d = s.theory->defs;
    Gen g(seed_for(s, o.seed + 1));
    auto dom = s.d.concl().free_vars();
    auto cap = capture_of(s.d);
    size_t h = height(s.d);
    for (size_t i = 0; i < o.substitutions; ++i) {
      Subst theta = g.subst(d, dom, cap);
      ++r.cases;
      guarded(r, describe(s, theta), [&] {
        size_t ht = height(subst_derivation(d, s.d, theta));
        if (ht > h) r.fail(describe(s, theta) + ": height " + std::to_string(ht) + " > " + std::to_string(h));
      });
    }
  }
  return r;
}

PropertyResult lemma_composition(const std::vector<Sample>& pool, const LemmaOptions& o) {
  PropertyResult r;
  for (const auto& s : pool) {
    const DefTable& d = s.theory->defs;
    Gen g(seed_for(s, o.seed + 2));
    auto dom = s.d.concl().free_vars();
    auto cap = capture_of(s.d);
    for (size_t i = 0; i < o.substitutions; ++i) {
      Subst theta = g.subst(d, dom, cap);
      auto mid = dom;
      for (const auto& [x, t] : apply_sequent(s.d.concl(), theta).free_vars()) mid[x] = t;
      Subst rho = g.subst(d, mid, cap);
      ++r.cases;
      guarded(r, describe(s, theta), [&] {
        Derivation a = canon(d, subst_derivation(d, subst_derivation(d, s.d, theta), rho));
        Derivation b = canon(d, subst_derivation(d, s.d, compose(theta, rho)));
        if (a != b) r.fail(describe(s, theta) + " then " + show(rho) + ": compositions differ");
      });
    }
  }
  return r;
}

PropertyResult lemma_param_commute(const std::vector<Sample>& pool, const LemmaOptions& o) {
  PropertyResult r;
  for (const auto& s : pool) {
    if (s.d.concl().params().empty()) continue;
    const DefTable& d = s.theory->defs;
    Gen g(seed_for(s, o.seed + 3));
    auto dom = s.d.concl().free_vars();
    auto cap = capture_of(s.d);
    for (size_t i = 0; i < o.substitutions; ++i) {
      ParamSubst th = random_theta(g, s);
      if (th.empty()) {
        r.fail(s.origin + ": no closed invariant for its parameters");
        break;
      }
      Subst delta = g.subst(d, dom, cap);
      ++r.cases;
      guarded(r, describe(s, delta), [&] {
        Derivation a = canon(d, subst_derivation(d, param_subst_derivation(d, s.d, th), delta));
        Derivation b = canon(d, param_subst_derivation(d, subst_derivation(d, s.d, delta), th));
        if (a != b) r.fail(describe(s, delta) + ": ΘΔ and ΔΘ differ");
        else if (!check(d, a).ok) r.fail(describe(s, delta) + ": result does not check");
      });
    }
  }
  return r;
}

PropertyResult lemma_vacuous(const std::vector<Sample>& pool, const LemmaOptions& o) {
  PropertyResult r;
  for (const auto& s : pool) {
    const DefTable& d = s.theory->defs;
    std::vector<std::pair<std::string, ParamBinding>> extra;
    for (const auto& c : d.clauses())
      for (auto& b : bindings_for(*s.theory, c.pred)) extra.push_back({c.pred, b});
    Gen g(seed_for(s, o.seed + 4));
    for (size_t i = 0; i < o.substitutions; ++i) {
      ParamSubst th = random_theta(g, s);
      if (g.coin(0.3)) th.clear();
      ++r.cases;
      guarded(r, s.origin, [&] {
        Derivation base_d = th.empty() ? s.d : param_subst_derivation(d, s.d, th);
        if (th.empty() && param_subst_derivation(d, s.d, th) != s.d) {
          r.fail(s.origin + ": empty Θ changed the derivation");
          return;
        }
        if (extra.empty()) return;
        auto& [pred, b] = extra[g.below(extra.size())];
        ParamSubst ext = th;
        ext[Param{fresh_name("V"), pred}] = b;
        Derivation got = param_subst_derivation(d, s.d, ext);
        if (canon(d, got) != canon(d, base_d)) r.fail(s.origin + ": a fresh parameter changed the result");
      });
    }
  }
  return r;
}

PropertyResult lemma_reduce_commute(const std::vector<Sample>& redexes, const LemmaOptions& o) {
  PropertyResult r;
  for (const auto& s : redexes) {
    const DefTable& d = s.theory->defs;
    std::vector<std::pair<ReductionStep, Derivation>> plain;
    try {
      plain = reducts(d, s.d);
    } catch (const Error& e) {
      r.fail(s.origin + ": reducts: " + e.what());
      continue;
    }
    Gen g(seed_for(s, o.seed + 5));
    auto dom = s.d.concl().free_vars();
    auto cap = capture_of(s.d);
    for (size_t i = 0; i < o.substitutions; ++i) {
      Subst theta = g.subst(d, dom, cap);
      ++r.cases;
      guarded(r, describe(s, theta), [&] {
        Derivation inst = subst_derivation(d, s.d, theta);
        for (const auto& [st, xi] : reducts(d, inst)) {
          Derivation target = canon(d, xi);
          bool found = false;
          for (const auto& [st0, red] : plain) {
            if (st0.case_name != st.case_name) continue;
            if (canon(d, subst_derivation(d, red, theta)) == target) {
              found = true;
              break;
            }
          }
          if (!found) r.fail(describe(s, theta) + ": no matching reduct for " + st.case_name);
        }
      });
    }
  }
  return r;
}

PropertyResult progress(const std::vector<Sample>& redexes) {
  PropertyResult r;
  for (const auto& s : redexes) {
    ++r.cases;
    guarded(r, s.origin, [&] {
      auto rs = reducts(s.theory->defs, s.d);
      if (rs.empty()) r.fail(s.origin + ": no reduct");
      for (const auto& [st, red] : rs) {
        auto rep = check(s.theory->defs, red);
        if (!rep.ok)
          r.fail(s.origin + " " + st.case_name + ": " + rep.violations.front().code + " " + rep.violations.front().message);
        else if (!(red.concl() == s.d.concl()))
          r.fail(s.origin + " " + st.case_name + ": end sequent changed to " + show(red.concl()));
      }
    });
  }
  return r;
}

// Level oracle --------------------------------------------------------

namespace {

struct SurfaceDefs {
  std::vector<std::string> preds;  // defined and declared predicates
  std::map<std::string, STerm> bodies;
};

int surface_size(const STerm& t, const std::string& self, const std::map<std::string, int>& lvl) {
  using K = STerm::Kind;
  switch (t.kind) {
    case K::True: case K::False: case K::Eq: case K::Param:
      return 1;
    case K::And: case K::Or: case K::Imp:
      return surface_size(t.kids[0], self, lvl) + surface_size(t.kids[1], self, lvl) + 1;
    case K::Forall: case K::Exists:
      return surface_size(t.kids[0], self, lvl) + 1;
    case K::App: case K::Ident: {
      const STerm* h = &t;
      while (h->kind == K::App) h = &h->kids[0];
      if (h->name == self) return 1;  // the recursive occurrence stands for X^p
      auto it = lvl.find(h->name);
      if (it == lvl.end()) throw std::runtime_error("oracle: unknown atom " + h->name);
      return it->second;
    }
    case K::Lam:
      break;
  }
  throw std::runtime_error("oracle: unexpected term");
}

}  // namespace

std::map<std::string, int> oracle_levels(const std::string& path) {
  SourceFile f = parse_file(path);
  SurfaceDefs s;
  for (const auto& decl : f.decls) {
    if (decl.kind == SDecl::Kind::Type && decl.type.target().is_prop())
      for (const auto& n : decl.names) s.preds.push_back(n);
    if (decl.kind == SDecl::Kind::Define) {
      s.preds.push_back(decl.names.front());
      s.bodies[decl.names.front()] = decl.body;
    }
  }
  std::sort(s.preds.begin(), s.preds.end());
  s.preds.erase(std::unique(s.preds.begin(), s.preds.end()), s.preds.end());
  // Predicates without a clause face no constraint; enumerate the rest.
  std::vector<std::string> defined;
  for (const auto& [p, b] : s.bodies) defined.push_back(p);
  const int bound = 40;
  size_t k = defined.size();
  if (k > 3) throw std::runtime_error("oracle: too many predicates for enumeration");
  std::vector<std::map<std::string, int>> good;
  std::vector<int> v(k, 1);
  while (true) {
    std::map<std::string, int> lvl;
    for (const auto& p : s.preds) lvl[p] = 1;
    for (size_t i = 0; i < k; ++i) lvl[defined[i]] = v[i];
    bool ok = true;
    for (const auto& [p, body] : s.bodies)
      if (lvl[p] <= surface_size(body, p, lvl)) ok = false;
    if (ok) good.push_back(lvl);
    size_t i = 0;
    while (i < k && v[i] == bound) v[i++] = 1;
    if (i == k) break;
    ++v[i];
  }
  for (const auto& cand : good) {
    bool least = std::all_of(good.begin(), good.end(), [&](const auto& other) {
      return std::all_of(cand.begin(), cand.end(), [&](const auto& kv) { return kv.second <= other.at(kv.first); });
    });
    if (least) return cand;
  }
  throw std::runtime_error("oracle: no least level assignment below the bound");
}

}  // namespace linc::testkit
