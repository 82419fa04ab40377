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

#ifndef LINC_THEORY_HPP
#define LINC_THEORY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linc/formula.hpp"

namespace linc {

// Declared base types and typed constants.
class Signature {
 public:
  // Throws DuplicateDeclaration / UnknownType / BadConstantType.
  void add_kind(const std::string& name);
  void add_const(const std::string& name, const Type& type);

  bool has_kind(const std::string& name) const { return kinds_.count(name) != 0; }
  const Type* find(const std::string& name) const;
  bool has_const(const std::string& name) const { return find(name) != nullptr; }
  // Constants whose type ends in o.
  std::vector<std::string> predicates() const;
  const std::vector<std::string>& kinds() const { return kind_order_; }
  const std::vector<std::pair<std::string, Type>>& constants() const { return const_order_; }

  // Every base type occurring in `t` is declared (or is o).
  bool well_formed(const Type& t) const;

 private:
  std::set<std::string> kinds_;
  std::vector<std::string> kind_order_;
  std::map<std::string, Type> consts_;
  std::vector<std::pair<std::string, Type>> const_order_;
};

enum class Fixpoint { Mu, Nu };

// p x⃗ ≜ B p x⃗. `body` is the closed abstraction λP. λx⃗. ..., so the
// recursive occurrences are bound by the outermost binder.
struct DefClause {
  std::string pred;
  Fixpoint flavor = Fixpoint::Mu;
  Type type;
  Term body;
  int line = 0;
  int col = 0;

  size_t arity() const { return type.arity(); }
  bool inductive() const { return flavor == Fixpoint::Mu; }
};

using LevelMap = std::map<std::string, int>;

struct Diagnostic {
  std::string code;
  std::string pred;
  std::string message;
  int line = 0;
  int col = 0;
};

class DefTable {
 public:
  Signature sig;

  // Duplicates are kept and reported by validate_defs; `find` sees the first.
  void add(DefClause clause);
  const DefClause* find(const std::string& pred) const;
  const std::vector<DefClause>& clauses() const { return clauses_; }

  // User-supplied levels, honoured only when they respect the size bound.
  std::map<std::string, int> level_overrides;
  std::map<std::string, std::pair<int, int>> level_spans;

  // Canonical B R t⃗ for predicate or parameter R of the right type.
  Term unfold(const std::string& pred, const Term& r, const std::vector<Term>& args) const;
  // Predicates the clause body of `pred` mentions, itself excluded.
  std::set<std::string> dependencies(const std::string& pred) const;

 private:
  std::vector<DefClause> clauses_;
  std::map<std::string, size_t> index_;
};

std::vector<Diagnostic> validate_defs(const DefTable& d);
LevelMap assign_levels(const DefTable& d);
// Throws UnknownPredicate when a predicate lacks a level.
int size(const Term& f, const LevelMap& lvl);
std::map<std::string, bool> is_stratified(const DefTable& d);
Term subst_params(const Term& f, const std::map<Param, Term>& m);

// The size of B X^p x⃗ for a fresh parameter and fresh variables.
int body_size(const DefTable& d, const std::string& pred, const LevelMap& lvl);

}  // namespace linc

#endif  // LINC_THEORY_HPP
