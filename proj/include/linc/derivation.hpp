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

#ifndef LINC_DERIVATION_HPP
#define LINC_DERIVATION_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linc/term.hpp"

namespace linc {

enum class Rule {
  Init, CL, WL, MC, BotL, TopR, AndL1, AndL2, AndR, OrL, OrR1, OrR2, ImpL, ImpR,
  ForallL, ForallR, ExistsL, ExistsR, EqL, EqR, IL, IR, IRp, CIL, CILp, CIR, Subst
};

// Surface names: init, cL, wL, mc, botL, topR, andL1, ..., subst.
const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
// Rules whose payload index designates a principal formula on the left.
bool is_left_rule(Rule r);
bool is_right_rule(Rule r);

// Γ ⊢ C. Positions in `left` are stable; logically the left side is a
// multiset, see `same_sequent`.
struct Sequent {
  std::vector<Term> left;
  Term right;

  bool operator==(const Sequent& o) const { return left == o.left && right == o.right; }
  std::map<std::string, Type> free_vars() const;
  std::set<Param> params() const;
};

bool same_multiset(const std::vector<Term>& a, const std::vector<Term>& b);
bool same_sequent(const Sequent& a, const Sequent& b);
// perm with actual[perm[i]] == expected[i]; nullopt when the multisets differ.
// Equal formulas keep their relative order.
std::optional<std::vector<size_t>> align(const std::vector<Term>& expected,
                                         const std::vector<Term>& actual);
std::vector<Term> erase_at(std::vector<Term> v, size_t k);
std::vector<Term> replace_at(std::vector<Term> v, size_t k, Term f);

struct Payload {
  int index = -1;            // principal formula on the left of the conclusion
  Term term;                 // witness (forallL, existsR) or eigenvariable (forallR, existsL)
  Term formula;              // extra data for conclusion inference (see apply_rule)
  Term invariant;            // S of IL / CIR
  std::vector<Term> vars;    // y⃗ of IL / CIR
  std::optional<Param> param;
  std::optional<Subst> mgu;  // eqL with a premise
  std::vector<int> cuts;     // mc: positions in the last premise's left side

  bool operator==(const Payload& o) const;
};

class Derivation {
 public:
  Derivation() = default;
  // Unchecked constructor; see kernel.hpp for validated construction.
  static Derivation make(Sequent concl, Rule rule, Payload payload,
                         std::vector<Derivation> children);

  bool valid() const { return node_ != nullptr; }
  const Sequent& concl() const;
  Rule rule() const;
  const Payload& payload() const;
  const std::vector<Derivation>& children() const;
  const Derivation& child(size_t i) const { return children()[i]; }

  size_t size() const;
  size_t height() const;
  bool cut_free() const;
  bool subst_free() const;
  size_t hash() const;
  const void* identity() const { return node_.get(); }

  bool operator==(const Derivation& o) const;
  bool operator!=(const Derivation& o) const { return !(*this == o); }

  // Same node with the conclusion's left side permuted to `target`
  // (a permutation of it); principal indices follow.
  Derivation reorder(const std::vector<Term>& target) const;
  Derivation with_children(std::vector<Derivation> children) const;

 private:
  struct Node;
  explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Subterm access by path of child indices.
const Derivation& at_path(const Derivation& d, const std::vector<int>& path);
Derivation replace_at_path(const Derivation& d, const std::vector<int>& path, const Derivation& sub);

// Every variable/parameter name occurring anywhere in the tree.
void collect_names(const Derivation& d, std::set<std::string>& vars, std::set<Param>& params);

// Consistent renaming of free variables / parameters throughout a tree.
Derivation rename_derivation(const Derivation& d, const std::map<std::string, std::string>& vars,
                             const std::map<Param, Param>& params);

}  // namespace linc

#endif  // LINC_DERIVATION_HPP
