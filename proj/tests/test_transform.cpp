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


#include <gtest/gtest.h>

#include "linc/formula.hpp"
#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/syntax.hpp"
#include "support.hpp"

using namespace linc;
using namespace linc::testkit;

namespace {

const Type nt = Type::base("nt");

Derivation first_with(const Derivation& d, Rule r) {
  for (const auto& n : subderivations(d))
    if (n.rule() == r) return n;
  return Derivation();
}

LemmaOptions quick() {
  LemmaOptions o;
  o.substitutions = 25;
  o.seed = 7;
  return o;
}

void expect_ok(const PropertyResult& r) {
  EXPECT_GT(r.cases, 0u);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
}

}  // namespace

TEST(SubstDerivation, EmptyIsIdentity) {
  for (const auto& s : corpus_proofs()) EXPECT_EQ(subst_derivation(s.theory->defs, s.d, Subst{}), s.d) << s.origin;
}

TEST(SubstDerivation, InjectivityInstance) {
  const Theory& th = corpus("freeness.lnc");
  const Derivation& inner = th.proof("injective")->proof.child(0);  // ⊢ ∀y. s x = s y ⊃ x = y
  auto fv = inner.concl().free_vars();
  ASSERT_EQ(fv.size(), 1u);
  Subst theta;
  theta.bind(fv.begin()->first, nt, term(th.defs, "z", nt));
  Derivation out = subst_derivation(th.defs, inner, theta);
  EXPECT_TRUE(check(th.defs, out).ok);
  EXPECT_EQ(out.concl().right, term(th.defs, "forall y, s z = s y => z = y", Type::prop()));
}

TEST(SubstDerivation, EqLLosesItsPremise) {
  Theory th = elaborate(parse_source(R"(
    kind nt : type.
    type z : nt.
    type s : nt -> nt.
    proof e (x : nt) (y : nt) : x = s y |- x = s y := eqL [0]. eqR.
  )"));
  const ProofEntry* p = th.proof("e");
  ASSERT_TRUE(p && p->ok());
  ASSERT_EQ(p->proof.children().size(), 1u);
  Subst theta;
  theta.bind("x", nt, term(th.defs, "z", nt));
  Derivation out = subst_derivation(th.defs, p->proof, theta);
  EXPECT_EQ(out.rule(), Rule::EqL);
  EXPECT_TRUE(out.children().empty());
  EXPECT_TRUE(check(th.defs, out).ok);
}

TEST(ParamSubst, AbsentParameterIsIgnored) {
  const Theory& th = corpus("ev.lnc");
  const Derivation& pi = th.proof("ev_ssz")->proof;
  auto bs = bindings_for(th, "ev");
  ASSERT_FALSE(bs.empty());
  ParamSubst theta{{Param{"Absent", "ev"}, bs.front()}};
  EXPECT_EQ(param_subst_derivation(th.defs, pi, theta), pi);
}

TEST(ParamSubst, IRpBecomesCut) {
  const Theory& th = corpus("ev.lnc");
  Derivation irp = first_with(th.proof("ev_ssz")->proof, Rule::IRp);
  ASSERT_TRUE(irp.valid());
  ASSERT_EQ(irp.concl().params().size(), 1u);
  Param x = *irp.concl().params().begin();
  ParamBinding b;
  for (auto& cand : bindings_for(th, "ev"))
    if (view(normalize(Term::app(cand.invariant, term(th.defs, "z", nt)), Type::prop())).kind == FormulaKind::True)
      b = cand;
  ASSERT_TRUE(b.proof.valid());
  Derivation out = param_subst_derivation(th.defs, irp, {{x, b}});
  EXPECT_EQ(out.rule(), Rule::MC);
  EXPECT_TRUE(check(th.defs, out).ok);
  EXPECT_EQ(out.concl().right, mk_true());
}

TEST(ParamSubst, CILpBecomesNestedCut) {
  const Theory& th = corpus("stream.lnc");
  Derivation cilp = first_with(th.proof("two_steps")->proof, Rule::CILp);
  ASSERT_TRUE(cilp.valid());
  ASSERT_FALSE(cilp.concl().params().empty());
  Param x = *cilp.concl().params().begin();
  auto bs = bindings_for(th, "stream");
  ASSERT_FALSE(bs.empty());
  Derivation out = param_subst_derivation(th.defs, cilp, {{x, bs.back()}});
  EXPECT_TRUE(check(th.defs, out).ok);
  ASSERT_EQ(out.rule(), Rule::MC);
  bool inner_identity = false;
  for (const auto& n : subderivations(out))
    if (n.rule() == Rule::MC && n.children().front().rule() == Rule::Init) inner_identity = true;
  EXPECT_TRUE(inner_identity) << show_tree(out);
}

TEST(ParamSubst, WrongInvariantTypeThrows) {
  const Theory& th = corpus("ev.lnc");
  const Derivation& pi = th.proof("ev_ssz")->proof;
  Derivation irp = first_with(pi, Rule::IRp);
  ASSERT_TRUE(irp.valid());
  ParamBinding b = bindings_for(th, "ev").front();
  b.invariant = mk_true();
  try {
    (void)param_subst_derivation(th.defs, irp, {{*irp.concl().params().begin(), b}});
    FAIL() << "expected TypeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "TypeMismatch");
  }
}

TEST(EliminateSubst, Examples) {
  const Theory& th = corpus("ev.lnc");
  const Derivation& pi = th.proof("ev_ssz")->proof;
  EXPECT_EQ(eliminate_subst(pi), pi);
  Derivation wrapped = apply_rule(th.defs, Rule::Subst, {}, {pi});
  EXPECT_FALSE(wrapped.subst_free());
  EXPECT_EQ(eliminate_subst(wrapped), pi);
}

TEST(EliminateSubst, NormalFormsAreSubstFree) {
  for (const auto& s : mc_roots()) {
    auto r = normalize(s.theory->defs, s.d);
    EXPECT_TRUE(is_subst_free(r.result)) << s.origin;
    EXPECT_EQ(eliminate_subst(r.result), r.result);
  }
}

TEST(RenameInternal, Fixpoint) {
  for (const auto& s : corpus_proofs()) {
    Derivation c = rename_internal(s.d);
    EXPECT_EQ(rename_internal(c), c);
    EXPECT_EQ(c.concl(), s.d.concl());
  }
}

TEST(RenameInternal, EigenvariableNameIsIrrelevant) {
  const Theory& th = corpus("freeness.lnc");
  Derivation v = prove(th, "|- forall x, z = s x => false", "forallR v. impR. eqL [0]");
  Derivation w = prove(th, "|- forall x, z = s x => false", "forallR w. impR. eqL [0]");
  EXPECT_NE(v, w);
  EXPECT_EQ(rename_internal(v), rename_internal(w));
}

TEST(RenameInternal, ConsistentRenamingIsInvisible) {
  Gen g(3);
  for (const auto& s : lemma_pool()) {
    std::set<std::string> vars;
    std::set<Param> params;
    collect_names(s.d, vars, params);
    auto fv = s.d.concl().free_vars();
    auto fp = s.d.concl().params();
    std::map<std::string, std::string> vr;
    std::map<Param, Param> pr;
    for (const auto& v : vars)
      if (!fv.count(v) && g.coin(0.7)) vr[v] = fresh_name("r");
    for (const auto& p : params)
      if (!fp.count(p) && g.coin(0.7)) pr[p] = Param{fresh_name("R"), p.pred};
    Derivation renamed = rename_derivation(s.d, vr, pr);
    EXPECT_TRUE(check(s.theory->defs, renamed).ok) << s.origin;
    EXPECT_EQ(rename_internal(renamed), rename_internal(s.d)) << s.origin;
  }
}

TEST(TransformProperties, GeneratorsAreNotTrivial) {
  size_t open = 0, moved = 0;
  for (const auto& s : lemma_pool()) {
    auto dom = s.d.concl().free_vars();
    if (dom.empty()) continue;
    ++open;
    Gen g(s.d.hash());
    Subst theta = g.subst(s.theory->defs, dom, {});
    if (subst_derivation(s.theory->defs, s.d, theta) != s.d) ++moved;
  }
  EXPECT_GT(open, 20u);
  EXPECT_GT(moved, open / 2);
}

TEST(TransformProperties, SubstitutedDerivationsCheck) { expect_ok(lemma_subst_checks(lemma_pool(), quick())); }
TEST(TransformProperties, HeightDoesNotGrow) { expect_ok(lemma_height(lemma_pool(), quick())); }
TEST(TransformProperties, CompositionAgrees) { expect_ok(lemma_composition(lemma_pool(), quick())); }
TEST(TransformProperties, ParameterAndEigenSubstitutionCommute) {
  expect_ok(lemma_param_commute(lemma_pool(), quick()));
}
TEST(TransformProperties, FreshParameterIsVacuous) { expect_ok(lemma_vacuous(lemma_pool(), quick())); }

TEST(TransformProperties, ParameterSubstitutionChecks) {
  size_t n = 0;
  for (const auto& s : lemma_pool()) {
    if (s.d.concl().params().empty()) continue;
    for (const Param& p : s.d.concl().params()) {
      for (const auto& b : bindings_for(*s.theory, p.pred)) {
        Derivation out = param_subst_derivation(s.theory->defs, s.d, {{p, b}});
        std::map<Param, Term> m{{p, b.invariant}};
        Sequent want;
        for (const auto& f : s.d.concl().left) want.left.push_back(subst_params(f, m));
        want.right = subst_params(s.d.concl().right, m);
        EXPECT_TRUE(check(s.theory->defs, out).ok) << s.origin;
        EXPECT_TRUE(same_sequent(out.concl(), want)) << s.origin;
        ++n;
      }
    }
  }
  EXPECT_GT(n, 10u);
}
