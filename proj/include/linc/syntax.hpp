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

#ifndef LINC_SYNTAX_HPP
#define LINC_SYNTAX_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linc/theory.hpp"
#include "linc/type.hpp"

namespace linc {

struct Span {
  int line = 0;
  int col = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string code, const std::string& msg, Span at)
      : Error(std::move(code), std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg), span_(at) {}
  Span span() const { return span_; }

 private:
  Span span_;
};

// Surface terms. Spans are ignored by ==.
struct STerm {
  enum class Kind { Ident, Param, True, False, App, Lam, Forall, Exists, And, Or, Imp, Eq };
  Kind kind = Kind::Ident;
  std::string name;           // Ident, Param, binder name
  std::string pred;           // Param
  std::optional<Type> type;   // binder annotation
  std::vector<STerm> kids;    // App: fun, arg; binders: body; binary: left, right
  Span span;

  bool operator==(const STerm& o) const;
};

struct SCut {
  STerm formula;
  std::vector<int> positions;
  bool operator==(const SCut& o) const = default;
};

// One rule application of a proof script with its premises in order.
struct SStep {
  std::string rule;
  std::optional<int> index;
  std::vector<STerm> terms;        // witness, invariant, `use` arguments
  std::vector<std::string> names;  // eigenvariable, parameter, y⃗, `use` target
  std::vector<std::pair<std::string, STerm>> with;  // eqL unifier
  std::vector<SCut> cuts;
  std::vector<SStep> premises;
  Span span;

  bool operator==(const SStep& o) const;
};

struct SBinder {
  std::string name;
  Type type;
  bool operator==(const SBinder& o) const = default;
};

struct SDecl {
  enum class Kind { Kind, Type, Define, Level, Invariant, Goal, Proof };
  Kind kind = Kind::Kind;
  std::vector<std::string> names;  // declared kinds / constants, or the single name
  Type type;                       // Type, Define
  Fixpoint flavor = Fixpoint::Mu;  // Define
  std::vector<std::string> head;   // Define: clause head variables
  STerm body;                      // Define body, Invariant term
  std::string pred;                // Invariant, Level
  int level = 0;                   // Level
  std::vector<SBinder> binders;    // Goal, Proof
  std::vector<STerm> left;         // Goal, Proof
  STerm right;
  SStep script;                    // Proof
  Span span;

  bool operator==(const SDecl& o) const;
};

struct SourceFile {
  std::vector<SDecl> decls;
  bool operator==(const SourceFile& o) const = default;
};

// Throws SyntaxError (code ParseError) with the offending position.
SourceFile parse_source(const std::string& text);
SourceFile parse_file(const std::string& path);
// `A, B |- C`
std::pair<std::vector<STerm>, STerm> parse_sequent_text(const std::string& text);
STerm parse_term_text(const std::string& text);
SStep parse_script_text(const std::string& text);

// Surface rendering; parse_source(print_source(f)) == f.
std::string print_source(const SourceFile& f);
std::string print_sterm(const STerm& t);
std::string print_step(const SStep& s, int indent = 0);

// Rule names and script macros that may start a step.
bool is_step_name(const std::string& s);

}  // namespace linc

#endif  // LINC_SYNTAX_HPP
