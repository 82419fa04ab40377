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

#ifndef LINC_TERM_HPP
#define LINC_TERM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "linc/type.hpp"

namespace linc {

// A parameter X^p: an atom standing for the recursive occurrence of the
// predicate `pred` inside (co)induction rules.
struct Param {
  std::string name;
  std::string pred;

  auto operator<=>(const Param&) const = default;
  std::string str() const { return name + "^" + pred; }
};

enum class TermKind : std::uint8_t { BVar, FVar, Const, Param, Lam, App };

// Simply-typed lambda terms with de Bruijn indices for bound variables.
// Free variables (eigenvariables) and constants carry their type, so the
// type of a term without loose indices is computable without a context.
// Binder names on `Lam` are printing hints only and are ignored by ==.
class Term {
 public:
  Term() = default;

  static Term bvar(std::uint32_t index);
  static Term fvar(std::string name, Type type);
  static Term constant(std::string name, Type type);
  static Term param(linc::Param p, Type type);
  static Term lam(std::string hint, Type binder, Term body);
  static Term app(Term fun, Term arg);
  static Term apps(Term head, const std::vector<Term>& args);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  std::uint32_t index() const;
  // FVar / Const name, or the binder hint of a Lam.
  const std::string& name() const;
  // Declared type of FVar / Const / Param, binder type of Lam.
  const Type& type() const;
  const linc::Param& param() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  // Head of the application spine and its arguments, left to right.
  Term head() const;
  std::vector<Term> args() const;

  // Every loose de Bruijn index is strictly below this bound.
  std::uint32_t loose_bound() const;
  bool has_fvars() const;
  bool has_params() const;

  size_t hash() const;
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  size_t operator()(const Term& t) const { return t.hash(); }
};

// Type inference. `ctx` lists binder types, innermost last. Throws IllTyped.
Type type_of(const Term& t, std::vector<Type>& ctx);
Type type_of(const Term& t);

Term shift(const Term& t, int delta, std::uint32_t cutoff = 0);
// body[0 := value], where `value` lives outside the binder.
Term instantiate(const Term& body, const Term& value);

// Beta-normal, eta-long form. Throws IllTyped when `t` does not have `type`.
Term normalize(const Term& t, const Type& type);
Term normalize(const Term& t);

// If `t` is the eta-expansion of a bound variable, that variable's index.
std::optional<std::uint32_t> eta_bvar(const Term& t);

void collect_free_vars(const Term& t, std::map<std::string, Type>& out);
std::map<std::string, Type> free_vars(const Term& t);
void collect_params(const Term& t, std::set<Param>& out);
std::set<Param> params_of(const Term& t);
bool occurs_var(const Term& t, const std::string& name);
bool occurs_param(const Term& t, const Param& p);

// Capture-free simultaneous replacement of free variables / parameters by
// closed (no loose index) terms, followed by renormalization.
Term replace_vars(const Term& t, const std::map<std::string, Term>& images);
Term replace_params(const Term& t, const std::map<Param, Term>& images);
Term rename_vars(const Term& t, const std::map<std::string, std::string>& names);
Term rename_params(const Term& t, const std::map<Param, Param>& names);

// Finite type-preserving map from eigenvariables to canonical terms.
class Subst {
 public:
  struct Entry {
    Type type;
    Term value;
  };

  Subst() = default;
  // Throws IllTyped when the value does not have the variable's type.
  void bind(const std::string& var, const Type& type, const Term& value);
  const Term* find(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  bool empty() const { return map_.empty(); }
  size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }
  void erase(const std::string& var) { map_.erase(var); }

  // Free variables of the range.
  std::map<std::string, Type> range_vars() const;
  std::map<std::string, Term> images() const;

  bool operator==(const Subst& other) const;

 private:
  std::map<std::string, Entry> map_;
};

Term apply(const Term& t, const Subst& s);
// t (compose(a, b)) == (t a) b
Subst compose(const Subst& a, const Subst& b);
Subst restrict_to(const Subst& s, const std::map<std::string, Type>& vars);

// Process-wide supply of names that cannot collide with earlier ones.
// Names look like `hint'N`.
std::string fresh_name(std::string_view hint);
// Guarantees subsequent fresh names use suffixes above `n`.
void reserve_fresh_suffix(std::uint64_t n);
std::string_view strip_fresh_suffix(std::string_view name);

}  // namespace linc

#endif  // LINC_TERM_HPP
