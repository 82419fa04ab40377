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

#include <algorithm>

#include "linc/formula.hpp"
#include "linc/kernel.hpp"
#include "linc/search.hpp"
#include "linc/syntax.hpp"
#include "support.hpp"

using namespace linc;
using namespace linc::testkit;

namespace {

const Type nt = Type::base("nt");

// First node with rule `r` in the corpus, with its theory.
std::pair<const Theory*, Derivation> find_rule(Rule r) {
  for (const auto& s : corpus_proofs())
    for (const auto& n : subderivations(s.d))
      if (n.rule() == r) return {s.theory, n};
  return {nullptr, Derivation()};
}

std::string first_code(const CheckReport& r) { return r.violations.empty() ? "" : r.violations.front().code; }

Derivation ev_z(const DefTable& d) {
  const Theory& th = corpus("ev.lnc");
  Term ev = Term::constant("ev", Type::arrow(nt, Type::prop()));
  Term z = term(d, "z", nt);
  return unfold_right(d, elaborate_script(th, Sequent{{}, d.unfold("ev", ev, {z})}, parse_script_text("orR1. eqR")),
                      "ev");
}

}  // namespace

TEST(Check, ClashNeedsThreeRules) {
  const Theory& th = corpus("freeness.lnc");
  const Derivation& pi = th.proof("clash")->proof;
  EXPECT_TRUE(check(th.defs, pi).ok);
  EXPECT_EQ(pi.rule(), Rule::ForallR);
  EXPECT_EQ(pi.child(0).rule(), Rule::ImpR);
  EXPECT_EQ(pi.child(0).child(0).rule(), Rule::EqL);
  EXPECT_TRUE(pi.child(0).child(0).children().empty());
  EXPECT_EQ(height(pi), 3u);
}

TEST(Check, IllTypedWitness) {
  Theory th = elaborate(parse_source(R"(
    kind nt : type.
    kind bt : type.
    type z : nt.
    type tt : bt.
    type r : nt -> o.
    proof inst : forall x, r x |- r z := forallL [0] z. init.
  )"));
  const ProofEntry* p = th.proof("inst");
  ASSERT_TRUE(p && p->ok());
  Payload bad = p->proof.payload();
  bad.term = Term::constant("tt", Type::base("bt"));
  Derivation broken = Derivation::make(p->proof.concl(), Rule::ForallL, bad, p->proof.children());
  EXPECT_EQ(first_code(check(th.defs, broken)), "IllTypedWitness");
}

TEST(Check, InvariantPremiseMismatch) {
  const Theory& th = corpus("ev_cut.lnc");
  Derivation il;
  for (const auto& n : subderivations(th.proof("ind_top")->proof))
    if (n.rule() == Rule::IL) il = n;
  ASSERT_TRUE(il.valid());
  Derivation wrong = apply_rule(th.defs, Rule::TopR, {}, {}, Sequent{{}, mk_true()});
  Derivation broken = il.with_children({wrong, il.child(1)});
  EXPECT_EQ(first_code(check(th.defs, broken)), "InvariantMismatch");
}

TEST(ApplyRule, InitIsIdentity) {
  const DefTable& d = corpus("ev.lnc").defs;
  Term b = term(d, "ev z", Type::prop());
  Payload p;
  p.formula = b;
  Derivation id = apply_rule(d, Rule::Init, p, {});
  EXPECT_EQ(id, identity(b));
  EXPECT_TRUE(check(d, id).ok);
}

TEST(ApplyRule, EmptyMulticutIsRejected) {
  const DefTable& d = corpus("ev.lnc").defs;
  try {
    (void)make_mc(d, {}, identity(mk_true()), {});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "EmptyMulticut");
  }
}

TEST(ApplyRule, EqR) {
  const DefTable& d = corpus("ev.lnc").defs;
  Term zz = term(d, "z = z", Type::prop());
  Derivation r = apply_rule(d, Rule::EqR, {}, {}, Sequent{{}, zz});
  EXPECT_EQ(r.concl(), (Sequent{{}, zz}));
  EXPECT_TRUE(check(d, r).ok);
}

TEST(ApplyRule, RaisesEagerly) {
  const DefTable& d = corpus("ev.lnc").defs;
  try {
    (void)apply_rule(d, Rule::EqR, {}, {}, Sequent{{}, term(d, "z = s z", Type::prop())});
    FAIL() << "expected NotReflexive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotReflexive");
  }
}

TEST(UnfoldRight, EvZeroAndTwo) {
  const Theory& th = corpus("ev.lnc");
  const DefTable& d = th.defs;
  Derivation z = ev_z(d);
  EXPECT_TRUE(check(d, z).ok);
  EXPECT_EQ(z.concl().right, term(d, "ev z", Type::prop()));
  Derivation two = prove(th, "|- ev (s (s z))", "unfoldR. orR2. existsR z. andR {eqR}. unfoldR. orR1. eqR");
  EXPECT_TRUE(check(d, two).ok);
  // The derived rule is a cut against IR.
  EXPECT_EQ(two.rule(), Rule::MC);
  EXPECT_EQ(z.rule(), Rule::MC);
  EXPECT_EQ(z.child(1).rule(), Rule::IR);
}

TEST(UnfoldRight, NonStratifiedIsRejected) {
  const DefTable& d = corpus("nonmono.lnc").defs;
  Term p = Term::constant("p", Type::prop());
  Derivation body = identity(mk_imp(p, mk_false()));
  try {
    (void)unfold_right(d, body, "p");
    FAIL() << "expected NotStratified";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotStratified");
  }
}

TEST(UnfoldRight, CoinductiveIsRejected) {
  const Theory& th = corpus("stream.lnc");
  Term st = Term::constant("q0", Type::base("st"));
  Term stream = Term::constant("stream", Type::arrow(Type::base("st"), Type::prop()));
  Derivation body = identity(th.defs.unfold("stream", stream, {st}));
  try {
    (void)unfold_right(th.defs, body, "stream");
    FAIL() << "expected NotInductive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotInductive");
  }
}

TEST(MajorPremises, Examples) {
  auto [t1, imp] = find_rule(Rule::ImpL);
  ASSERT_TRUE(imp.valid());
  EXPECT_EQ(major_premises(imp), (std::vector<size_t>{1}));
  auto [t2, cir] = find_rule(Rule::CIR);
  ASSERT_TRUE(cir.valid());
  EXPECT_EQ(major_premises(cir), (std::vector<size_t>{0}));
  auto [t3, andr] = find_rule(Rule::AndR);
  ASSERT_TRUE(andr.valid());
  EXPECT_EQ(major_premises(andr), (std::vector<size_t>{0, 1}));
}

TEST(Height, Leaves) {
  EXPECT_EQ(height(identity(mk_true())), 1u);
  for (const auto& s : corpus_proofs())
    for (const auto& n : subderivations(s.d))
      if (n.rule() == Rule::EqL && n.children().empty()) EXPECT_EQ(height(n), 1u);
}

TEST(KernelProperties, CorpusChecksAndReconstructs) {
  size_t nodes = 0;
  for (const auto& s : corpus_proofs()) {
    const DefTable& d = s.theory->defs;
    ASSERT_TRUE(check(d, s.d).ok) << s.origin;
    for (const auto& n : subderivations(s.d)) {
      if (n.rule() == Rule::MC) {
        std::vector<Derivation> cps(n.children().begin(), n.children().end() - 1);
        Derivation again = make_mc(d, cps, n.children().back(), n.payload().cuts);
        EXPECT_TRUE(same_sequent(again.concl(), n.concl())) << s.origin;
        continue;
      }
      // The principal formula where the premises do not determine it.
      Payload p = n.payload();
      if (is_right_rule(n.rule())) p.formula = n.concl().right;
      else if (p.index >= 0) p.formula = n.concl().left[static_cast<size_t>(p.index)];
      if (n.rule() == Rule::Init) p.formula = n.concl().right;
      std::optional<Sequent> goal;
      if (n.children().empty() || n.rule() == Rule::EqL) goal = n.concl();
      Derivation again = apply_rule(d, n.rule(), p, n.children(), goal);
      EXPECT_TRUE(same_sequent(again.concl(), n.concl())) << s.origin << " " << rule_name(n.rule());
      EXPECT_TRUE(check(d, again).ok);
      ++nodes;
    }
  }
  EXPECT_GT(nodes, 100u);
}

TEST(KernelProperties, MajorPremisesPartition) {
  for (const auto& s : corpus_proofs())
    for (const auto& n : subderivations(s.d)) {
      auto major = major_premises(n);
      size_t k = n.children().size();
      EXPECT_TRUE(std::is_sorted(major.begin(), major.end()));
      for (size_t i : major) EXPECT_LT(i, k);
      bool has_minor = major.size() < k;
      bool may = n.rule() == Rule::ImpL || n.rule() == Rule::MC || n.rule() == Rule::IL || n.rule() == Rule::CIR;
      if (has_minor) EXPECT_TRUE(may) << rule_name(n.rule());
    }
}

// Right unfolding checks for every stratified inductive predicate over small
// closed arguments whose body the search can prove.
TEST(KernelProperties, UnfoldRightChecksOnCorpus) {
  size_t built = 0;
  for (const auto& f : corpus_files()) {
    const Theory& th = corpus(f);
    const DefTable& d = th.defs;
    auto strat = is_stratified(d);
    Gen g(std::hash<std::string>{}(f));
    for (const auto& c : d.clauses()) {
      if (!c.inductive() || !strat.at(c.pred)) continue;
      Term head = Term::constant(c.pred, c.type);
      for (int i = 0; i < 12; ++i) {
        std::vector<Term> args;
        for (const Type& a : c.type.args()) args.push_back(g.term_of(d, a, {}, 3));
        if (std::any_of(args.begin(), args.end(), [](const Term& t) { return t.has_fvars(); })) continue;
        SearchBudget b;
        b.depth = 7;
        b.nodes = 20000;
        auto body = bounded_search(d, Sequent{{}, d.unfold(c.pred, head, args)}, b);
        if (!body) continue;
        Derivation out = unfold_right(d, *body, c.pred);
        EXPECT_TRUE(check(d, out).ok) << f << " " << c.pred;
        EXPECT_EQ(out.concl().right, normalize(Term::apps(head, args), Type::prop()));
        ++built;
      }
    }
  }
  EXPECT_GT(built, 3u);
}
