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

#include "linc/term.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

namespace linc {

struct Term::Node {
  TermKind kind;
  std::uint32_t index = 0;
  std::string name;
  Type type;
  linc::Param param;
  Term a, b;
  size_t hash = 0;
  std::uint32_t loose = 0;
  bool fvars = false;
  bool params = false;
};

namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

const std::string kEmpty;

}  // namespace

Term Term::bvar(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::BVar;
  n->index = index;
  n->loose = index + 1;
  n->hash = mix(1, index);
  return Term(std::move(n));
}

Term Term::fvar(std::string name, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::FVar;
  n->hash = mix(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->type = std::move(type);
  n->fvars = true;
  return Term(std::move(n));
}

Term Term::constant(std::string name, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->hash = mix(3, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->type = std::move(type);
  return Term(std::move(n));
}

Term Term::param(linc::Param p, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Param;
  n->hash = mix(mix(4, std::hash<std::string>{}(p.name)), std::hash<std::string>{}(p.pred));
  n->param = std::move(p);
  n->type = std::move(type);
  n->params = true;
  return Term(std::move(n));
}

Term Term::lam(std::string hint, Type binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->hash = mix(mix(5, binder.hash()), body.hash());
  n->name = std::move(hint);
  n->type = std::move(binder);
  n->loose = body.loose_bound() > 0 ? body.loose_bound() - 1 : 0;
  n->fvars = body.has_fvars();
  n->params = body.has_params();
  n->a = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->hash = mix(mix(6, fun.hash()), arg.hash());
  n->loose = std::max(fun.loose_bound(), arg.loose_bound());
  n->fvars = fun.has_fvars() || arg.has_fvars();
  n->params = fun.has_params() || arg.has_params();
  n->a = std::move(fun);
  n->b = std::move(arg);
  return Term(std::move(n));
}

Term Term::apps(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

TermKind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const Type& Term::type() const { return node_->type; }
const linc::Param& Term::param() const { return node_->param; }
const Term& Term::body() const { return node_->a; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
std::uint32_t Term::loose_bound() const { return node_->loose; }
bool Term::has_fvars() const { return node_->fvars; }
bool Term::has_params() const { return node_->params; }
size_t Term::hash() const { return node_ ? node_->hash : 0; }

Term Term::head() const {
  const Term* t = this;
  while (t->is(TermKind::App)) t = &t->fun();
  return *t;
}

std::vector<Term> Term::args() const {
  std::vector<Term> out;
  const Term* t = this;
  while (t->is(TermKind::App)) {
    out.push_back(t->arg());
    t = &t->fun();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash || node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case TermKind::BVar:
      return index() == other.index();
    case TermKind::FVar:
    case TermKind::Const:
      return name() == other.name() && type() == other.type();
    case TermKind::Param:
      return param() == other.param() && type() == other.type();
    case TermKind::Lam:
      return type() == other.type() && body() == other.body();
    case TermKind::App:
      return fun() == other.fun() && arg() == other.arg();
  }
  return false;
}

// ---------------------------------------------------------------------------

Type type_of(const Term& t, std::vector<Type>& ctx) {
  switch (t.kind()) {
    case TermKind::BVar:
      if (t.index() >= ctx.size())
        throw Error("IllTyped", "loose bound variable #" + std::to_string(t.index()));
      return ctx[ctx.size() - 1 - t.index()];
    case TermKind::FVar:
    case TermKind::Const:
    case TermKind::Param:
      return t.type();
    case TermKind::Lam: {
      ctx.push_back(t.type());
      Type body = type_of(t.body(), ctx);
      ctx.pop_back();
      return Type::arrow(t.type(), body);
    }
    case TermKind::App: {
      Type f = type_of(t.fun(), ctx);
      Type a = type_of(t.arg(), ctx);
      if (!f.is_arrow())
        throw Error("IllTyped", "applying a term of non-function type " + f.str());
      if (f.from() != a)
        throw Error("IllTyped", "argument of type " + a.str() + " where " + f.from().str() +
                                    " is expected");
      return f.to();
    }
  }
  throw Error("IllTyped", "unknown term");
}

Type type_of(const Term& t) {
  std::vector<Type> ctx;
  return type_of(t, ctx);
}

Term shift(const Term& t, int delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose_bound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      return Term::bvar(static_cast<std::uint32_t>(static_cast<int>(t.index()) + delta));
    case TermKind::Lam:
      return Term::lam(t.name(), t.type(), shift(t.body(), delta, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fun(), delta, cutoff), shift(t.arg(), delta, cutoff));
    default:
      return t;
  }
}

namespace {

Term subst_bvar(const Term& t, std::uint32_t depth, const Term& value) {
  if (t.loose_bound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      if (t.index() == depth) return shift(value, static_cast<int>(depth));
      return Term::bvar(t.index() - 1);
    case TermKind::Lam:
      return Term::lam(t.name(), t.type(), subst_bvar(t.body(), depth + 1, value));
    case TermKind::App:
      return Term::app(subst_bvar(t.fun(), depth, value), subst_bvar(t.arg(), depth, value));
    default:
      return t;
  }
}

Term nf(const Term& t, const Type& ty, std::vector<Type>& ctx) {
  if (ty.is_arrow()) {
    if (t.is(TermKind::Lam)) {
      ctx.push_back(t.type());
      Term body = nf(t.body(), ty.to(), ctx);
      ctx.pop_back();
      return Term::lam(t.name(), t.type(), std::move(body));
    }
    ctx.push_back(ty.from());
    Term body = nf(Term::app(shift(t, 1), Term::bvar(0)), ty.to(), ctx);
    ctx.pop_back();
    return Term::lam("x", ty.from(), std::move(body));
  }
  // weak head reduction; `stack` holds pending arguments, first one last
  Term h = t;
  std::vector<Term> stack;
  for (;;) {
    while (h.is(TermKind::App)) {
      stack.push_back(h.arg());
      h = h.fun();
    }
    if (h.is(TermKind::Lam) && !stack.empty()) {
      Term v = std::move(stack.back());
      stack.pop_back();
      h = subst_bvar(h.body(), 0, v);
      continue;
    }
    break;
  }
  Type hty = h.is(TermKind::BVar) ? ctx[ctx.size() - 1 - h.index()] : h.type();
  Term out = h;
  const Type* cur = &hty;
  while (!stack.empty()) {
    out = Term::app(std::move(out), nf(stack.back(), cur->from(), ctx));
    stack.pop_back();
    cur = &cur->to();
  }
  return out;
}

}  // namespace

Term instantiate(const Term& body, const Term& value) { return subst_bvar(body, 0, value); }

Term normalize(const Term& t, const Type& type) {
  Type actual = type_of(t);
  if (actual != type)
    throw Error("IllTyped", "term has type " + actual.str() + ", expected " + type.str());
  std::vector<Type> ctx;
  return nf(t, type, ctx);
}

Term normalize(const Term& t) {
  std::vector<Type> ctx;
  Type ty = type_of(t, ctx);
  return nf(t, ty, ctx);
}

std::optional<std::uint32_t> eta_bvar(const Term& t) {
  std::uint32_t k = 0;
  const Term* cur = &t;
  while (cur->is(TermKind::Lam)) {
    ++k;
    cur = &cur->body();
  }
  Term h = cur->head();
  if (!h.is(TermKind::BVar) || h.index() < k) return std::nullopt;
  std::vector<Term> args = cur->args();
  if (args.size() != k) return std::nullopt;
  for (std::uint32_t i = 0; i < k; ++i) {
    auto j = eta_bvar(args[i]);
    if (!j || *j != k - 1 - i) return std::nullopt;
  }
  return h.index() - k;
}

void collect_free_vars(const Term& t, std::map<std::string, Type>& out) {
  if (!t.has_fvars()) return;
  switch (t.kind()) {
    case TermKind::FVar:
      out.emplace(t.name(), t.type());
      return;
    case TermKind::Lam:
      collect_free_vars(t.body(), out);
      return;
    case TermKind::App:
      collect_free_vars(t.fun(), out);
      collect_free_vars(t.arg(), out);
      return;
    default:
      return;
  }
}

std::map<std::string, Type> free_vars(const Term& t) {
  std::map<std::string, Type> out;
  collect_free_vars(t, out);
  return out;
}

void collect_params(const Term& t, std::set<Param>& out) {
  if (!t.has_params()) return;
  switch (t.kind()) {
    case TermKind::Param:
      out.insert(t.param());
      return;
    case TermKind::Lam:
      collect_params(t.body(), out);
      return;
    case TermKind::App:
      collect_params(t.fun(), out);
      collect_params(t.arg(), out);
      return;
    default:
      return;
  }
}

std::set<Param> params_of(const Term& t) {
  std::set<Param> out;
  collect_params(t, out);
  return out;
}

bool occurs_var(const Term& t, const std::string& name) {
  if (!t.has_fvars()) return false;
  switch (t.kind()) {
    case TermKind::FVar:
      return t.name() == name;
    case TermKind::Lam:
      return occurs_var(t.body(), name);
    case TermKind::App:
      return occurs_var(t.fun(), name) || occurs_var(t.arg(), name);
    default:
      return false;
  }
}

bool occurs_param(const Term& t, const Param& p) {
  if (!t.has_params()) return false;
  switch (t.kind()) {
    case TermKind::Param:
      return t.param() == p;
    case TermKind::Lam:
      return occurs_param(t.body(), p);
    case TermKind::App:
      return occurs_param(t.fun(), p) || occurs_param(t.arg(), p);
    default:
      return false;
  }
}

namespace {

// Replaces atoms for which `f` yields an image; `changed` tracks whether a
// renormalization is needed.
template <class F>
Term replace_atoms(const Term& t, bool want_fvars, const F& f, bool& changed) {
  if (want_fvars ? !t.has_fvars() : !t.has_params()) return t;
  switch (t.kind()) {
    case TermKind::FVar:
    case TermKind::Param: {
      std::optional<Term> img = f(t);
      if (!img) return t;
      changed = true;
      return *img;
    }
    case TermKind::Lam: {
      Term b = replace_atoms(t.body(), want_fvars, f, changed);
      return b.identity() == t.body().identity() ? t : Term::lam(t.name(), t.type(), b);
    }
    case TermKind::App: {
      Term a = replace_atoms(t.fun(), want_fvars, f, changed);
      Term b = replace_atoms(t.arg(), want_fvars, f, changed);
      if (a.identity() == t.fun().identity() && b.identity() == t.arg().identity()) return t;
      return Term::app(a, b);
    }
    default:
      return t;
  }
}

void check_image(const Term& atom, const Term& image) {
  if (image.loose_bound() != 0) throw Error("IllTyped", "substitution image is not closed");
  Type ty = type_of(image);
  if (ty != atom.type())
    throw Error("IllTyped", "image of type " + ty.str() + " for an atom of type " + atom.type().str());
}

}  // namespace

Term replace_vars(const Term& t, const std::map<std::string, Term>& images) {
  if (images.empty()) return t;
  bool changed = false;
  Term r = replace_atoms(
      t, true,
      [&](const Term& a) -> std::optional<Term> {
        if (!a.is(TermKind::FVar)) return std::nullopt;
        auto it = images.find(a.name());
        if (it == images.end()) return std::nullopt;
        check_image(a, it->second);
        return it->second;
      },
      changed);
  return changed ? normalize(r) : t;
}

Term replace_params(const Term& t, const std::map<Param, Term>& images) {
  if (images.empty()) return t;
  bool changed = false;
  Term r = replace_atoms(
      t, false,
      [&](const Term& a) -> std::optional<Term> {
        if (!a.is(TermKind::Param)) return std::nullopt;
        auto it = images.find(a.param());
        if (it == images.end()) return std::nullopt;
        check_image(a, it->second);
        return it->second;
      },
      changed);
  return changed ? normalize(r) : t;
}

Term rename_vars(const Term& t, const std::map<std::string, std::string>& names) {
  if (names.empty()) return t;
  bool changed = false;
  return replace_atoms(
      t, true,
      [&](const Term& a) -> std::optional<Term> {
        if (!a.is(TermKind::FVar)) return std::nullopt;
        auto it = names.find(a.name());
        if (it == names.end()) return std::nullopt;
        return Term::fvar(it->second, a.type());
      },
      changed);
}

Term rename_params(const Term& t, const std::map<Param, Param>& names) {
  if (names.empty()) return t;
  bool changed = false;
  return replace_atoms(
      t, false,
      [&](const Term& a) -> std::optional<Term> {
        if (!a.is(TermKind::Param)) return std::nullopt;
        auto it = names.find(a.param());
        if (it == names.end()) return std::nullopt;
        return Term::param(it->second, a.type());
      },
      changed);
}

// ---------------------------------------------------------------------------

void Subst::bind(const std::string& var, const Type& type, const Term& value) {
  if (value.loose_bound() != 0) throw Error("IllTyped", "substitution image is not closed");
  map_[var] = Entry{type, normalize(value, type)};
}

const Term* Subst::find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second.value;
}

std::map<std::string, Type> Subst::range_vars() const {
  std::map<std::string, Type> out;
  for (const auto& [_, e] : map_) collect_free_vars(e.value, out);
  return out;
}

std::map<std::string, Term> Subst::images() const {
  std::map<std::string, Term> out;
  for (const auto& [k, e] : map_) out.emplace(k, e.value);
  return out;
}

bool Subst::operator==(const Subst& other) const {
  if (map_.size() != other.map_.size()) return false;
  for (const auto& [k, e] : map_) {
    auto it = other.map_.find(k);
    if (it == other.map_.end() || it->second.type != e.type || it->second.value != e.value)
      return false;
  }
  return true;
}

Term apply(const Term& t, const Subst& s) {
  if (s.empty() || !t.has_fvars()) return t;
  bool changed = false;
  Term r = replace_atoms(
      t, true,
      [&](const Term& a) -> std::optional<Term> {
        if (!a.is(TermKind::FVar)) return std::nullopt;
        const Term* img = s.find(a.name());
        if (!img) return std::nullopt;
        check_image(a, *img);
        return *img;
      },
      changed);
  return changed ? normalize(r) : t;
}

Subst compose(const Subst& a, const Subst& b) {
  Subst out;
  for (const auto& [x, e] : a) {
    Term v = apply(e.value, b);
    if (v.is(TermKind::FVar) && v.name() == x) continue;
    out.bind(x, e.type, v);
  }
  for (const auto& [y, e] : b) {
    if (a.contains(y)) continue;
    out.bind(y, e.type, e.value);
  }
  return out;
}

Subst restrict_to(const Subst& s, const std::map<std::string, Type>& vars) {
  Subst out;
  for (const auto& [x, e] : s)
    if (vars.count(x)) out.bind(x, e.type, e.value);
  return out;
}

// ---------------------------------------------------------------------------

namespace {
std::atomic<std::uint64_t> g_fresh{0};
}

std::string_view strip_fresh_suffix(std::string_view name) {
  auto q = name.rfind('\'');
  if (q == std::string_view::npos || q + 1 == name.size()) return name;
  for (size_t i = q + 1; i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return name;
  return name.substr(0, q);
}

std::string fresh_name(std::string_view hint) {
  std::string base(strip_fresh_suffix(hint));
  if (base.empty()) base = "v";
  return base + "'" + std::to_string(++g_fresh);
}

void reserve_fresh_suffix(std::uint64_t n) {
  std::uint64_t cur = g_fresh.load();
  while (cur < n && !g_fresh.compare_exchange_weak(cur, n)) {
  }
}

}  // namespace linc
