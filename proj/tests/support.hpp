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


// Shared fixtures for the unit tests and the acceptance runner: corpus
// access, random term and substitution generators, redex pools, and the
// property checks that both executables run.

#ifndef LINC_TESTS_SUPPORT_HPP
#define LINC_TESTS_SUPPORT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "linc/elaborate.hpp"
#include "linc/reduce.hpp"
#include "linc/transform.hpp"

namespace linc::testkit {

std::string corpus_dir();
std::vector<std::string> corpus_files();  // absolute paths, sorted
const Theory& corpus(const std::string& file);  // "ev.lnc" or an absolute path; cached

Term term(const DefTable& d, const std::string& text, const Type& ty,
          const std::map<std::string, Type>& vars = {});
Derivation prove(const Theory& th, const std::string& sequent, const std::string& script);

// Every node of `d`, root first.
std::vector<Derivation> subderivations(const Derivation& d);
// Free variables of every sequent in `d`, with their types.
std::map<std::string, Type> typed_names(const Derivation& d);

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::mt19937_64& rng() { return rng_; }
  size_t below(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Random β-normal η-long term of type `ty` over the signature, `vars`, and
  // fresh variables.
  Term term_of(const DefTable& d, const Type& ty, const std::map<std::string, Type>& vars, int depth);
  // Random substitution on (a subset of) `domain`, ranging over terms that
  // mention `domain`, `capture` and fresh names.
  Subst subst(const DefTable& d, const std::map<std::string, Type>& domain,
              const std::map<std::string, Type>& capture);

 private:
  std::mt19937_64 rng_;
};

// Identification up to premise order and internal names.
Derivation canon(const DefTable& d, const Derivation& pi);
Sequent apply_sequent(const Sequent& s, const Subst& theta);

struct Sample {
  std::string origin;  // file:proof[/path]
  const Theory* theory = nullptr;
  Derivation d;
};

// Roots of every checked corpus proof.
std::vector<Sample> corpus_proofs();
// mc-rooted corpus proofs.
std::vector<Sample> mc_roots();
// Roots plus distinct subderivations with free variables or parameters.
std::vector<Sample> lemma_pool();
// Every redex reduced while normalizing corpus proofs, plus mc roots.
std::vector<Sample> redex_pool();

// Outcome of a property run.
struct PropertyResult {
  size_t cases = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void fail(std::string what) {
    if (failures.size() < 20) failures.push_back(std::move(what));
    else if (failures.size() == 20) failures.push_back("...");
  }
};

struct LemmaOptions {
  size_t substitutions = 200;  // per derivation
  std::uint64_t seed = 1;
};

PropertyResult lemma_subst_checks(const std::vector<Sample>& pool, const LemmaOptions& o);
PropertyResult lemma_height(const std::vector<Sample>& pool, const LemmaOptions& o);
PropertyResult lemma_composition(const std::vector<Sample>& pool, const LemmaOptions& o);
PropertyResult lemma_param_commute(const std::vector<Sample>& pool, const LemmaOptions& o);
PropertyResult lemma_vacuous(const std::vector<Sample>& pool, const LemmaOptions& o);
PropertyResult lemma_reduce_commute(const std::vector<Sample>& redexes, const LemmaOptions& o);

// Reducts of `xi` exist, check, and keep the end sequent.
PropertyResult progress(const std::vector<Sample>& redexes);

// Closed invariants with their pre/post-fixed-point proofs, for building Θ.
std::vector<ParamBinding> bindings_for(const Theory& th, const std::string& pred);

// Brute force over level vectors: the pointwise least assignment with
// size(p x⃗) > size(B X^p x⃗), computed on the surface syntax.
std::map<std::string, int> oracle_levels(const std::string& path);

}  // namespace linc::testkit

#endif  // LINC_TESTS_SUPPORT_HPP
