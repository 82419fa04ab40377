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

#include "linc/unify.hpp"

#include <algorithm>
#include <deque>

namespace linc {

namespace {

constexpr const char* kFrozen = "\x01frz:";

bool pattern_rec(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam:
      return pattern_rec(t.body());
    case TermKind::App: {
      Term h = t.head();
      std::vector<Term> args = t.args();
      if (h.is(TermKind::FVar)) {
        std::vector<std::uint32_t> seen;
        for (const auto& a : args) {
          auto j = eta_bvar(a);
          if (!j || std::find(seen.begin(), seen.end(), *j) != seen.end()) return false;
          seen.push_back(*j);
        }
        return true;
      }
      for (const auto& a : args)
        if (!pattern_rec(a)) return false;
      return true;
    }
    default:
      return true;
  }
}

Term wrap(const std::vector<Type>& ctx, Term body) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) body = Term::lam("x", *it, std::move(body));
  return body;
}

// Flex side: variable head plus the context indices its arguments denote.
struct Flex {
  Term var;
  std::vector<std::uint32_t> args;
};

std::optional<Flex> as_flex(const Term& body) {
  Term h = body.head();
  if (!h.is(TermKind::FVar)) return std::nullopt;
  Flex f{h, {}};
  for (const auto& a : body.args()) {
    auto j = eta_bvar(a);
    if (!j) throw Error("NotAPattern", "free variable " + h.name() + " applied to a non-variable");
    f.args.push_back(*j);
  }
  return f;
}

class Unifier {
 public:
  enum class Outcome { Done, Fail, Retry };

  std::optional<Subst> run(std::deque<std::pair<Term, Term>> work) {
    while (!work.empty()) {
      auto [l, r] = work.front();
      work.pop_front();
      l = apply(l, sigma_);
      r = apply(r, sigma_);
      if (l == r) continue;
      std::vector<Type> ctx;
      Term lb = l, rb = r;
      while (lb.is(TermKind::Lam) && rb.is(TermKind::Lam)) {
        ctx.push_back(lb.type());
        lb = lb.body();
        rb = rb.body();
      }
      auto fl = as_flex(lb);
      auto fr = as_flex(rb);
      if (!fl && !fr) {
        Term hl = lb.head(), hr = rb.head();
        if (!(hl == hr)) return std::nullopt;
        auto al = lb.args(), ar = rb.args();
        for (size_t i = 0; i < al.size(); ++i) work.emplace_back(wrap(ctx, al[i]), wrap(ctx, ar[i]));
        continue;
      }
      if (fl && fr) {
        Outcome o = flex_flex(*fl, *fr);
        if (o == Outcome::Retry) work.emplace_front(l, r);
        continue;
      }
      const Flex& f = fl ? *fl : *fr;
      const Term& rigid = fl ? rb : lb;
      Outcome o = solve(f, rigid);
      if (o == Outcome::Fail) return std::nullopt;
      if (o == Outcome::Retry) work.emplace_front(l, r);
    }
    return sigma_;
  }

 private:
  Subst sigma_;
  bool pruned_ = false;

  void bind(const Term& var, const Term& value) {
    Subst one;
    one.bind(var.name(), var.type(), value);
    sigma_ = compose(sigma_, one);
  }

  // λ-abstraction over the argument types of `var`'s type.
  static Term abstract(const Type& ty, Term body) {
    std::vector<Type> args = ty.args();
    for (auto it = args.rbegin(); it != args.rend(); ++it) body = Term::lam("y", *it, std::move(body));
    return body;
  }

  // Rebuild `t` (under `d` local binders) replacing context index j by the
  // binder position `map[j]` of the solution. Prunes flexible subterms.
  std::optional<Term> invert(const Term& t, std::uint32_t d, const std::vector<int>& map,
                             std::uint32_t n, const Term& self) {
    switch (t.kind()) {
      case TermKind::BVar: {
        if (t.index() < d) return t;
        std::uint32_t j = t.index() - d;
        if (j >= map.size() || map[j] < 0) return std::nullopt;
        return Term::bvar(static_cast<std::uint32_t>(map[j]) + d);
      }
      case TermKind::Lam: {
        auto b = invert(t.body(), d + 1, map, n, self);
        if (pruned_ || !b) return std::nullopt;
        return Term::lam(t.name(), t.type(), *b);
      }
      case TermKind::App:
      case TermKind::FVar: {
        Term h = t.head();
        std::vector<Term> args = t.args();
        if (h.is(TermKind::FVar)) {
          if (h.name() == self.name()) return std::nullopt;
          // keep arguments that survive the inversion, prune the rest
          std::vector<size_t> keep;
          std::vector<Term> kept;
          for (size_t i = 0; i < args.size(); ++i) {
            auto a = invert(args[i], d, map, n, self);
            if (pruned_) return std::nullopt;
            if (a) {
              keep.push_back(i);
              kept.push_back(*a);
            }
          }
          if (keep.size() == args.size()) return Term::apps(h, kept);
          std::vector<Type> at = h.type().args();
          std::vector<Type> kt;
          for (size_t i : keep) kt.push_back(at[i]);
          Term fresh = Term::fvar(fresh_name(h.name()), Type::arrows(kt, h.type().target()));
          std::vector<Term> zs;
          for (size_t i : keep) zs.push_back(Term::bvar(static_cast<std::uint32_t>(at.size() - 1 - i)));
          bind(h, abstract(h.type(), Term::apps(fresh, zs)));
          pruned_ = true;
          return Term::apps(fresh, kept);
        }
        if (h.is(TermKind::BVar)) {
          auto hb = invert(h, d, map, n, self);
          if (!hb) return std::nullopt;
          h = *hb;
        }
        std::vector<Term> out;
        for (const auto& a : args) {
          auto b = invert(a, d, map, n, self);
          if (pruned_ || !b) return std::nullopt;
          out.push_back(*b);
        }
        return Term::apps(h, out);
      }
      default:
        return t;
    }
  }

  static std::vector<int> position_map(const Flex& f) {
    std::uint32_t n = static_cast<std::uint32_t>(f.args.size());
    std::uint32_t mx = 0;
    for (auto j : f.args) mx = std::max(mx, j + 1);
    std::vector<int> map(mx, -1);
    for (std::uint32_t i = 0; i < n; ++i) map[f.args[i]] = static_cast<int>(n - 1 - i);
    return map;
  }

  // Pruning binds one variable and asks for the equation to be revisited.
  Outcome solve(const Flex& f, const Term& rigid) {
    auto map = position_map(f);
    pruned_ = false;
    auto body = invert(rigid, 0, map, static_cast<std::uint32_t>(f.args.size()), f.var);
    if (pruned_) return Outcome::Retry;
    if (!body) return Outcome::Fail;
    bind(f.var, abstract(f.var.type(), *body));
    return Outcome::Done;
  }

  static bool subset(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    for (auto x : a)
      if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
  }

  Term rebuild(const Flex& g) {
    std::vector<Term> args;
    for (auto j : g.args) args.push_back(Term::bvar(j));
    return Term::apps(g.var, args);
  }

  Outcome flex_flex(const Flex& f, const Flex& g) {
    if (f.var.name() == g.var.name()) {
      std::vector<Type> at = f.var.type().args();
      std::vector<Type> kt;
      std::vector<Term> zs;
      for (size_t i = 0; i < f.args.size(); ++i) {
        if (f.args[i] != g.args[i]) continue;
        kt.push_back(at[i]);
        zs.push_back(Term::bvar(static_cast<std::uint32_t>(at.size() - 1 - i)));
      }
      Term fresh = Term::fvar(fresh_name(f.var.name()), Type::arrows(kt, f.var.type().target()));
      bind(f.var, abstract(f.var.type(), Term::apps(fresh, zs)));
      return Outcome::Done;
    }
    // eta-expanded argument bodies are not needed: the context indices
    // suffice because both sides live at base type
    if (subset(g.args, f.args) || !subset(f.args, g.args)) return solve(f, rebuild(g));
    return solve(g, rebuild(f));
  }
};

Term freeze(const Term& t) {
  std::map<std::string, Term> images;
  for (const auto& [x, ty] : free_vars(t)) images.emplace(x, Term::constant(kFrozen + x, ty));
  return replace_vars(t, images);
}

Term thaw(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const:
      if (t.name().rfind(kFrozen, 0) == 0)
        return Term::fvar(t.name().substr(std::string(kFrozen).size()), t.type());
      return t;
    case TermKind::Lam:
      return Term::lam(t.name(), t.type(), thaw(t.body()));
    case TermKind::App:
      return Term::app(thaw(t.fun()), thaw(t.arg()));
    default:
      return t;
  }
}

}  // namespace

bool is_pattern(const Term& t) {
  if (!t.has_fvars()) return true;
  return pattern_rec(t);
}

std::optional<Subst> unify_all(const TermPairs& problems) {
  std::map<std::string, Type> vars;
  std::deque<std::pair<Term, Term>> work;
  for (const auto& [l, r] : problems) {
    Type tl = type_of(l), tr = type_of(r);
    if (tl != tr) throw Error("IllTyped", "unifying terms of types " + tl.str() + " and " + tr.str());
    if (!is_pattern(l) || !is_pattern(r))
      throw Error("NotAPattern", "unification problem outside the pattern fragment");
    collect_free_vars(l, vars);
    collect_free_vars(r, vars);
    work.emplace_back(normalize(l, tl), normalize(r, tr));
  }
  auto sigma = Unifier().run(std::move(work));
  if (!sigma) return std::nullopt;
  return restrict_to(*sigma, vars);
}

std::optional<Subst> unify(const Term& s, const Term& t) { return unify_all({{s, t}}); }

std::optional<Subst> match_all(const TermPairs& problems) {
  TermPairs frozen;
  std::map<std::string, Type> vars;
  for (const auto& [l, r] : problems) {
    collect_free_vars(l, vars);
    frozen.emplace_back(l, freeze(r));
  }
  auto d = unify_all(frozen);
  if (!d) return std::nullopt;
  Subst out;
  for (const auto& [x, e] : *d) {
    // a match never needs to invent variables
    Term v = thaw(e.value);
    out.bind(x, e.type, v);
  }
  return restrict_to(out, vars);
}

std::optional<Subst> match(const Term& pattern, const Term& target) {
  return match_all({{pattern, target}});
}

}  // namespace linc
