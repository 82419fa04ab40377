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

#ifndef LINC_FORMULA_HPP
#define LINC_FORMULA_HPP

#include <string>
#include <vector>

#include "linc/term.hpp"

namespace linc {

// Formulas are canonical terms of type o whose connectives are reserved
// constants. `view` gives the structured reading.
enum class FormulaKind { True, False, Eq, And, Or, Imp, Forall, Exists, Pred, ParamAtom };

struct FormulaView {
  FormulaKind kind;
  Term left, right;        // operands of binary connectives and equality
  Type qtype;              // type of the quantified variable or of equality
  Term abs;                // quantifier body, a Lam
  Term head;               // predicate constant or parameter
  std::vector<Term> args;  // arguments of an atom
};

namespace conn {
inline constexpr const char* kTrue = "true";
inline constexpr const char* kFalse = "false";
inline constexpr const char* kAnd = "/\\";
inline constexpr const char* kOr = "\\/";
inline constexpr const char* kImp = "=>";
inline constexpr const char* kForall = "forall";
inline constexpr const char* kExists = "exists";
inline constexpr const char* kEq = "=";
}  // namespace conn

bool is_logical_constant(const std::string& name);

// Throws NotAFormula for terms that are not canonical formulas.
FormulaView view(const Term& f);
FormulaKind kind_of(const Term& f);

Term mk_true();
Term mk_false();
Term mk_and(const Term& a, const Term& b);
Term mk_or(const Term& a, const Term& b);
Term mk_imp(const Term& a, const Term& b);
Term mk_eq(const Term& s, const Term& t);
// `abs` is a Lam over the quantified variable.
Term mk_forall(const Term& abs);
Term mk_exists(const Term& abs);

// λx. t with the free variable `name` turned into the bound one.
Term abstract_var(const Term& t, const std::string& name, const Type& type);
// Canonical form of (abs witness).
Term instance(const Term& abs, const Term& witness);

}  // namespace linc

#endif  // LINC_FORMULA_HPP
