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

#ifndef LINC_KERNEL_HPP
#define LINC_KERNEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "linc/derivation.hpp"
#include "linc/theory.hpp"

namespace linc {

struct Violation {
  std::vector<int> path;
  std::string code;
  std::string message;
};

struct CheckReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Premises a rule instance with this conclusion and payload must have.
// Not defined for mc. Throws Error carrying the violation code.
std::vector<Sequent> expected_premises(const DefTable& d, const Sequent& concl, Rule rule,
                                       const Payload& p);

// Violations local to the root node (paths relative to it are empty).
std::vector<Violation> check_node(const DefTable& d, const Derivation& node);
// Accumulating check of every node. Never throws.
CheckReport check(const DefTable& d, const Derivation& pi);

// Validated node construction; throws Error with the first violation.
Derivation derive(const DefTable& d, Sequent concl, Rule rule, Payload p,
                  std::vector<Derivation> children);

// Builds the conclusion from the premises (and payload.formula where a
// premise does not determine it). `goal` overrides the inferred conclusion
// and is needed for zero-premise rules with a context and for eqL.
Derivation apply_rule(const DefTable& d, Rule rule, Payload p, std::vector<Derivation> premises,
                      const std::optional<Sequent>& goal = std::nullopt);

Derivation identity(const Term& b);

// n-ary cut with the cut formulas at `cuts` in the last premise. The
// conclusion lists the contexts of the cut premises first.
Derivation make_mc(const DefTable& d, std::vector<Derivation> cut_premises, Derivation main,
                   std::vector<int> cuts);

// wL steps turning a derivation of Γ ⊢ C into one of `target` ⊢ C, where
// Γ is a sub-multiset of `target`. Leftmost extra formula goes lowest.
Derivation weaken_to(const DefTable& d, const Derivation& pi, const std::vector<Term>& target);
// cL steps turning a derivation of Γ ⊢ C into one of `target` ⊢ C, where
// `target` is a sub-multiset of Γ with the same support.
Derivation contract_to(const DefTable& d, const Derivation& pi, const std::vector<Term>& target);

// Derived right unfolding for stratified inductive predicates: from a proof
// of Γ ⊢ B p t⃗ a proof of Γ ⊢ p t⃗.
Derivation unfold_right(const DefTable& d, const Derivation& pi, const std::string& pred);

std::vector<size_t> major_premises(const Derivation& node);
size_t height(const Derivation& pi);

}  // namespace linc

#endif  // LINC_KERNEL_HPP
