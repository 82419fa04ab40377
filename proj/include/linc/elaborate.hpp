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

#ifndef LINC_ELABORATE_HPP
#define LINC_ELABORATE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linc/derivation.hpp"
#include "linc/syntax.hpp"
#include "linc/theory.hpp"

namespace linc {

struct NamedInvariant {
  std::string name;
  std::string pred;
  Term term;
};

struct GoalEntry {
  std::string name;
  std::vector<Term> vars;  // declared free variables
  Sequent seq;
  Span span;
};

// A proof declaration. When elaboration of its script fails, `proof` is
// invalid and `error_*` describe the first failure.
struct ProofEntry {
  std::string name;
  std::vector<Term> vars;
  Sequent seq;
  Derivation proof;
  std::string error_code;
  std::string error_message;
  Span span;
  Span error_span;

  bool ok() const { return proof.valid(); }
};

struct Theory {
  DefTable defs;
  std::vector<Diagnostic> diagnostics;  // validate_defs on the definitions
  std::vector<NamedInvariant> invariants;
  std::vector<GoalEntry> goals;
  std::vector<ProofEntry> proofs;

  const ProofEntry* proof(const std::string& name) const;
  const GoalEntry* goal(const std::string& name) const;
  const NamedInvariant* invariant(const std::string& name) const;
};

// Declarations are processed in order. Type errors, unknown names and
// malformed declarations raise SyntaxError; failing proof scripts are
// recorded in their ProofEntry instead.
Theory elaborate(const SourceFile& f);
Theory load_theory(const std::string& path);

// Free variables of `vars` are in scope; other unknown identifiers become
// new free variables when `allow_new` holds.
Term elaborate_term(const DefTable& d, const STerm& t, const Type& expected,
                    const std::map<std::string, Type>& vars = {}, bool allow_new = false);
Sequent elaborate_sequent(const DefTable& d, const std::vector<STerm>& left, const STerm& right,
                          const std::map<std::string, Type>& vars = {}, bool allow_new = true);
// `A, B |- C` with free variables inferred.
Sequent read_sequent(const DefTable& d, const std::string& text);

// Builds the derivation a script describes for `goal`. Throws SyntaxError
// with the code of the first violation at the offending step.
Derivation elaborate_script(const Theory& th, const Sequent& goal, const SStep& script);

// Script that elaborates back to `pi` with every premise in its canonical
// order (see `canonical_order`).
SStep to_script(const DefTable& d, const Derivation& pi);
// Each premise permuted to the order its rule lists the formulas in.
Derivation canonical_order(const DefTable& d, const Derivation& pi);

}  // namespace linc

#endif  // LINC_ELABORATE_HPP
