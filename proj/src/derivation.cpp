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

#include "linc/derivation.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace linc {

namespace {

struct RuleInfo {
  Rule rule;
  const char* name;
};

constexpr RuleInfo kRules[] = {
    {Rule::Init, "init"},       {Rule::CL, "cL"},           {Rule::WL, "wL"},
    {Rule::MC, "mc"},           {Rule::BotL, "botL"},       {Rule::TopR, "topR"},
    {Rule::AndL1, "andL1"},     {Rule::AndL2, "andL2"},     {Rule::AndR, "andR"},
    {Rule::OrL, "orL"},         {Rule::OrR1, "orR1"},       {Rule::OrR2, "orR2"},
    {Rule::ImpL, "impL"},       {Rule::ImpR, "impR"},       {Rule::ForallL, "forallL"},
    {Rule::ForallR, "forallR"}, {Rule::ExistsL, "existsL"}, {Rule::ExistsR, "existsR"},
    {Rule::EqL, "eqL"},         {Rule::EqR, "eqR"},         {Rule::IL, "IL"},
    {Rule::IR, "IR"},           {Rule::IRp, "IRp"},         {Rule::CIL, "CIL"},
    {Rule::CILp, "CILp"},       {Rule::CIR, "CIR"},         {Rule::Subst, "subst"},
};

bool same_opt(const Term& a, const Term& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  return a == b;
}

}  // namespace

const char* rule_name(Rule r) {
  for (const auto& i : kRules)
    if (i.rule == r) return i.name;
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (const auto& i : kRules)
    if (name == i.name) return i.rule;
  return std::nullopt;
}

bool is_left_rule(Rule r) {
  switch (r) {
    case Rule::CL: case Rule::WL: case Rule::BotL: case Rule::AndL1: case Rule::AndL2:
    case Rule::OrL: case Rule::ImpL: case Rule::ForallL: case Rule::ExistsL: case Rule::EqL:
    case Rule::IL: case Rule::CIL: case Rule::CILp:
      return true;
    default:
      return false;
  }
}

bool is_right_rule(Rule r) {
  switch (r) {
    case Rule::TopR: case Rule::AndR: case Rule::OrR1: case Rule::OrR2: case Rule::ImpR:
    case Rule::ForallR: case Rule::ExistsR: case Rule::EqR: case Rule::IR: case Rule::IRp:
    case Rule::CIR:
      return true;
    default:
      return false;
  }
}

std::map<std::string, Type> Sequent::free_vars() const {
  std::map<std::string, Type> out;
  for (const auto& f : left) collect_free_vars(f, out);
  if (right.valid()) collect_free_vars(right, out);
  return out;
}

std::set<Param> Sequent::params() const {
  std::set<Param> out;
  for (const auto& f : left) collect_params(f, out);
  if (right.valid()) collect_params(right, out);
  return out;
}

std::optional<std::vector<size_t>> align(const std::vector<Term>& expected,
                                         const std::vector<Term>& actual) {
  if (expected.size() != actual.size()) return std::nullopt;
  size_t n = expected.size();
  std::vector<size_t> perm(n, n);
  std::vector<bool> used(n, false);
  for (size_t i = 0; i < n; ++i)
    if (expected[i] == actual[i]) {
      perm[i] = i;
      used[i] = true;
    }
  for (size_t i = 0; i < n; ++i) {
    if (perm[i] != n) continue;
    for (size_t j = 0; j < n; ++j)
      if (!used[j] && expected[i] == actual[j]) {
        perm[i] = j;
        used[j] = true;
        break;
      }
    if (perm[i] == n) return std::nullopt;
  }
  return perm;
}

bool same_multiset(const std::vector<Term>& a, const std::vector<Term>& b) {
  return align(a, b).has_value();
}

bool same_sequent(const Sequent& a, const Sequent& b) {
  return a.right == b.right && same_multiset(a.left, b.left);
}

std::vector<Term> erase_at(std::vector<Term> v, size_t k) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
  return v;
}

std::vector<Term> replace_at(std::vector<Term> v, size_t k, Term f) {
  v[k] = std::move(f);
  return v;
}

bool Payload::operator==(const Payload& o) const {
  return index == o.index && same_opt(term, o.term) && same_opt(formula, o.formula) &&
         same_opt(invariant, o.invariant) && vars == o.vars && param == o.param && mgu == o.mgu &&
         cuts == o.cuts;
}

// ---------------------------------------------------------------------------

struct Derivation::Node {
  Sequent concl;
  Rule rule;
  Payload payload;
  std::vector<Derivation> children;
  size_t size = 1;
  size_t height = 1;
  bool cut_free = true;
  bool subst_free = true;
  size_t hash = 0;
};

Derivation Derivation::make(Sequent concl, Rule rule, Payload payload,
                            std::vector<Derivation> children) {
  auto n = std::make_shared<Node>();
  n->rule = rule;
  n->cut_free = rule != Rule::MC;
  n->subst_free = rule != Rule::Subst;
  size_t h = static_cast<size_t>(rule) * 1000003u;
  for (const auto& f : concl.left) h = h * 31 + f.hash();
  h = h * 31 + concl.right.hash();
  size_t height = 0;
  for (const auto& c : children) {
    n->size += c.size();
    height = std::max(height, c.height());
    n->cut_free = n->cut_free && c.cut_free();
    n->subst_free = n->subst_free && c.subst_free();
    h = h * 131 + c.hash();
  }
  n->height = height + 1;
  n->hash = h;
  n->concl = std::move(concl);
  n->payload = std::move(payload);
  n->children = std::move(children);
  return Derivation(std::move(n));
}

const Sequent& Derivation::concl() const { return node_->concl; }
Rule Derivation::rule() const { return node_->rule; }
const Payload& Derivation::payload() const { return node_->payload; }
const std::vector<Derivation>& Derivation::children() const { return node_->children; }
size_t Derivation::size() const { return node_->size; }
size_t Derivation::height() const { return node_->height; }
bool Derivation::cut_free() const { return node_->cut_free; }
bool Derivation::subst_free() const { return node_->subst_free; }
size_t Derivation::hash() const { return node_ ? node_->hash : 0; }

bool Derivation::operator==(const Derivation& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash || node_->size != o.node_->size) return false;
  if (rule() != o.rule() || !(concl() == o.concl()) || !(payload() == o.payload())) return false;
  return children() == o.children();
}

Derivation Derivation::reorder(const std::vector<Term>& target) const {
  if (target == concl().left) return *this;
  auto perm = align(target, concl().left);
  if (!perm) throw Error("InternalError", "reorder: not a permutation of the conclusion");
  Payload p = payload();
  if (is_left_rule(rule()) && p.index >= 0) {
    for (size_t i = 0; i < perm->size(); ++i)
      if ((*perm)[i] == static_cast<size_t>(p.index)) {
        p.index = static_cast<int>(i);
        break;
      }
  }
  return make(Sequent{target, concl().right}, rule(), std::move(p), children());
}

Derivation Derivation::with_children(std::vector<Derivation> children) const {
  return make(concl(), rule(), payload(), std::move(children));
}

const Derivation& at_path(const Derivation& d, const std::vector<int>& path) {
  const Derivation* cur = &d;
  for (int i : path) cur = &cur->child(static_cast<size_t>(i));
  return *cur;
}

Derivation replace_at_path(const Derivation& d, const std::vector<int>& path, const Derivation& sub) {
  if (path.empty()) return sub;
  std::vector<int> rest(path.begin() + 1, path.end());
  auto kids = d.children();
  kids[static_cast<size_t>(path[0])] = replace_at_path(kids[static_cast<size_t>(path[0])], rest, sub);
  return d.with_children(std::move(kids));
}

namespace {

void names_of(const Term& t, std::set<std::string>& vars, std::set<Param>& params) {
  if (!t.valid()) return;
  std::map<std::string, Type> fv;
  collect_free_vars(t, fv);
  for (const auto& [n, _] : fv) vars.insert(n);
  collect_params(t, params);
}

}  // namespace

void collect_names(const Derivation& d, std::set<std::string>& vars, std::set<Param>& params) {
  std::unordered_set<const void*> seen;
  std::vector<const Derivation*> todo{&d};
  while (!todo.empty()) {
    const Derivation* cur = todo.back();
    todo.pop_back();
    if (!seen.insert(cur->identity()).second) continue;
    for (const auto& f : cur->concl().left) names_of(f, vars, params);
    names_of(cur->concl().right, vars, params);
    const Payload& p = cur->payload();
    names_of(p.term, vars, params);
    names_of(p.formula, vars, params);
    names_of(p.invariant, vars, params);
    for (const auto& v : p.vars) names_of(v, vars, params);
    if (p.param) params.insert(*p.param);
    if (p.mgu)
      for (const auto& [x, e] : *p.mgu) {
        vars.insert(x);
        names_of(e.value, vars, params);
      }
    for (const auto& c : cur->children()) todo.push_back(&c);
  }
}

Derivation rename_derivation(const Derivation& d, const std::map<std::string, std::string>& vars,
                             const std::map<Param, Param>& params) {
  if (vars.empty() && params.empty()) return d;
  std::unordered_map<const void*, Derivation> memo;
  auto ren = [&](const Term& t) -> Term {
    if (!t.valid()) return t;
    return rename_params(rename_vars(t, vars), params);
  };
  std::function<Derivation(const Derivation&)> go = [&](const Derivation& n) -> Derivation {
    auto it = memo.find(n.identity());
    if (it != memo.end()) return it->second;
    Sequent s;
    for (const auto& f : n.concl().left) s.left.push_back(ren(f));
    s.right = ren(n.concl().right);
    Payload p = n.payload();
    p.term = ren(p.term);
    p.formula = ren(p.formula);
    p.invariant = ren(p.invariant);
    for (auto& v : p.vars) v = ren(v);
    if (p.param) {
      auto pi = params.find(*p.param);
      if (pi != params.end()) p.param = pi->second;
    }
    if (p.mgu) {
      Subst m;
      for (const auto& [x, e] : *p.mgu) {
        auto vi = vars.find(x);
        m.bind(vi == vars.end() ? x : vi->second, e.type, ren(e.value));
      }
      p.mgu = m;
    }
    std::vector<Derivation> kids;
    for (const auto& c : n.children()) kids.push_back(go(c));
    Derivation out = Derivation::make(std::move(s), n.rule(), std::move(p), std::move(kids));
    memo.emplace(n.identity(), out);
    return out;
  };
  return go(d);
}

}  // namespace linc
