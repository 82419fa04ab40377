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

#ifndef LINC_SEARCH_HPP
#define LINC_SEARCH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linc/derivation.hpp"
#include "linc/theory.hpp"

namespace linc {

struct SearchBudget {
  int depth = 8;        // rule applications along a branch
  int unfold = 4;       // IR/IRp/CIL/CILp applications per predicate along a branch
  size_t nodes = 200000;  // sequents visited over the whole search
};

// Invariants the search may use for IL (inductive) and CIR (co-inductive)
// on the named predicate.
using InvariantTable = std::multimap<std::string, Term>;

struct SearchStats {
  size_t nodes = 0;
  bool exhausted = false;  // stopped by the node budget
};

// Cut-free proof of `goal` within the budget, or nullopt ("not found", never
// "not derivable"). Throws NotAPattern for equations outside the fragment
// and InvalidBudget for non-positive bounds.
std::optional<Derivation> bounded_search(const DefTable& d, const Sequent& goal, const SearchBudget& b,
                                         const InvariantTable& invariants = {}, SearchStats* stats = nullptr);

}  // namespace linc

#endif  // LINC_SEARCH_HPP
