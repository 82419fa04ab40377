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

#ifndef LINC_UNIFY_HPP
#define LINC_UNIFY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "linc/term.hpp"

namespace linc {

using TermPairs = std::vector<std::pair<Term, Term>>;

// Every free variable is applied to distinct bound variables only.
bool is_pattern(const Term& t);

// Most general unifier of canonical terms of equal type. The domain is
// restricted to the variables of the inputs; variables introduced by pruning
// appear only in the range. Throws NotAPattern outside the pattern fragment.
std::optional<Subst> unify(const Term& s, const Term& t);
std::optional<Subst> unify_all(const TermPairs& problems);

// One-sided unification: a substitution d on the variables of the left
// sides with apply(l, d) == r for every pair. Variables of the right sides
// are held rigid.
std::optional<Subst> match_all(const TermPairs& problems);
std::optional<Subst> match(const Term& pattern, const Term& target);

}  // namespace linc

#endif  // LINC_UNIFY_HPP
