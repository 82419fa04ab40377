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

#ifndef LINC_PRINTER_HPP
#define LINC_PRINTER_HPP

#include <string>

#include "linc/derivation.hpp"
#include "linc/theory.hpp"
#include "linc/term.hpp"

namespace linc {

// Surface rendering of terms and formulas; binder types are always shown so
// the output parses back to the same canonical term.
std::string show(const Term& t);
std::string show(const Sequent& s);
std::string show(const Subst& s);

// Proof-script rendering of a derivation, one step per line.
std::string show_script(const DefTable& defs, const Derivation& d, int indent = 0);
// Indented tree of rule names and conclusions, for diagnostics and dumps.
std::string show_tree(const Derivation& d);

}  // namespace linc

#endif  // LINC_PRINTER_HPP
