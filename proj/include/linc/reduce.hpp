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

#ifndef LINC_REDUCE_HPP
#define LINC_REDUCE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linc/derivation.hpp"
#include "linc/theory.hpp"

namespace linc {

enum class CaseFamily { Essential, LeftCommutative, RightCommutative, Multicut, Structural, Axiom };
const char* family_name(CaseFamily f);

struct ReductionStep {
  std::vector<int> path;  // address of the reduced mc node
  CaseFamily family = CaseFamily::Essential;
  std::string case_name;  // e.g. "impR/impL", "IR/IL", "-/wL", "init/oL"
  int cut_index = -1;     // cut formula involved, -1 when none is
};

// All reducts of a derivation ending in mc, the preferred one first. Each
// reduct has exactly the conclusion of `xi`. Throws NotARedex otherwise.
std::vector<std::pair<ReductionStep, Derivation>> reducts(const DefTable& d, const Derivation& xi);

enum class Strategy { Innermost };

// Reduces the deepest mc (leftmost among equally deep ones); nullopt when
// there is no mc left.
std::optional<std::pair<ReductionStep, Derivation>> step(const DefTable& d, const Derivation& pi,
                                                         Strategy s = Strategy::Innermost);

struct TraceEntry {
  ReductionStep step;
  size_t size_after = 0;
};

struct Trace {
  Sequent initial;
  Sequent final;
  std::vector<TraceEntry> steps;
  size_t final_size = 0;
};

struct NormalizeResult {
  Derivation result;
  Trace trace;
};

class FuelExhausted : public Error {
 public:
  FuelExhausted(Trace trace, Derivation partial)
      : Error("FuelExhausted", "fuel exhausted after " + std::to_string(trace.steps.size()) + " steps"),
        trace_(std::move(trace)),
        partial_(std::move(partial)) {}
  const Trace& trace() const { return trace_; }
  const Derivation& partial() const { return partial_; }

 private:
  Trace trace_;
  Derivation partial_;
};

// 100000, or the value of LINC_FUEL when set.
size_t default_fuel();

// Cut-free and subst-free derivation with the same end sequent. Throws
// FuelExhausted when more than `fuel` steps would be needed.
NormalizeResult normalize(const DefTable& d, const Derivation& pi, size_t fuel = default_fuel());

bool is_cut_free(const Derivation& pi);
bool is_subst_free(const Derivation& pi);

}  // namespace linc

#endif  // LINC_REDUCE_HPP
