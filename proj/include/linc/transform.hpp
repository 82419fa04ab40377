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

#ifndef LINC_TRANSFORM_HPP
#define LINC_TRANSFORM_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "linc/derivation.hpp"
#include "linc/theory.hpp"

namespace linc {

// Θ(X^p) = (Π_S, S). For inductive p, Π_S proves B S x⃗ ⊢ S x⃗; for
// co-inductive p it proves S x⃗ ⊢ B S x⃗. `vars` lists x⃗.
struct ParamBinding {
  Derivation proof;
  Term invariant;
  std::vector<Term> vars;
};
using ParamSubst = std::map<Param, ParamBinding>;

// Πθ: a derivation of Γθ ⊢ Cθ.
Derivation subst_derivation(const DefTable& d, const Derivation& pi, const Subst& theta);
// ΠΘ: a derivation of ΓΘ ⊢ CΘ.
Derivation param_subst_derivation(const DefTable& d, const Derivation& pi, const ParamSubst& theta);
// Removes every subst node (each stores its identity instance).
Derivation eliminate_subst(const Derivation& pi);
// Canonical names for variables and parameters not free in the end
// sequent, numbered in order of first occurrence.
Derivation rename_internal(const Derivation& pi);

// Variables / parameters a node introduces: those of its premises (and
// payload) that are not in its conclusion.
std::set<std::string> introduced_vars(const Derivation& node);
std::set<Param> introduced_params(const Derivation& node);

// Renames the variables and parameters introduced anywhere in `pi` that
// belong to the avoid sets. The end sequent is untouched.
Derivation rename_apart(const Derivation& pi, const std::set<std::string>& vars,
                        const std::set<Param>& params);

}  // namespace linc

#endif  // LINC_TRANSFORM_HPP
