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
#include "linc/syntax.hpp"
#include "support.hpp"

using namespace linc;
using namespace linc::testkit;

namespace {

const Type nt = Type::base("nt");
const Type pred1 = Type::arrow(nt, Type::prop());

Theory load(const std::string& text) { return elaborate(parse_source(text)); }

const char* kNat = R"(
  kind nt : type.
  type z : nt.
  type s : nt -> nt.
)";

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
  for (const auto& d : ds)
    if (d.code == code) return true;
  return false;
}

Term xp(const std::string& pred, const Type& ty) { return Term::param(Param{"X", pred}, ty); }

}  // namespace

TEST(ValidateDefs, EvIsAccepted) { EXPECT_TRUE(validate_defs(corpus("ev.lnc").defs).empty()); }

TEST(ValidateDefs, TwoCycleIsMutualRecursion) {
  Theory th = load(std::string(kNat) + R"(
    type p : o.
    type q : o.
    define mu p : o := p := q /\ true.
    define mu q : o := q := p.
  )");
  EXPECT_TRUE(has_code(th.diagnostics, "MutualRecursion"));
}

TEST(ValidateDefs, ParameterInBodyIsRejected) {
  Theory th = load(std::string(kNat) + R"(
    define mu p : o := p := X^p.
  )");
  EXPECT_TRUE(has_code(th.diagnostics, "ParameterInBody"));
}

TEST(ValidateDefs, DiagnosticsCarryLocation) {
  Theory th = load(std::string(kNat) + "type q : o.\ndefine mu p : o := p := q.\ndefine mu q : o := q := p.\n");
  ASSERT_FALSE(th.diagnostics.empty());
  EXPECT_GT(th.diagnostics.front().line, 0);
}

TEST(AssignLevels, UndefinedPredicateGetsOne) {
  Theory th = load(std::string(kNat) + "type q : o.\ndefine mu p : o := p := q.\n");
  LevelMap lvl = assign_levels(th.defs);
  EXPECT_EQ(lvl.at("q"), 1);
  EXPECT_EQ(lvl.at("p"), 2);
}

TEST(AssignLevels, EvGetsSevenLikeTheOracle) {
  EXPECT_EQ(assign_levels(corpus("ev.lnc").defs).at("ev"), 7);
  EXPECT_EQ(oracle_levels(corpus_dir() + "/ev.lnc").at("ev"), 7);
}

TEST(AssignLevels, TrueBodyGetsTwo) {
  Theory th = load(std::string(kNat) + "define mu p : o := p := true.\n");
  EXPECT_EQ(assign_levels(th.defs).at("p"), 2);
}

TEST(AssignLevels, AgreesWithOracleOnCorpus) {
  for (const auto& f : corpus_files()) {
    LevelMap lvl = assign_levels(corpus(f).defs);
    for (const auto& [p, n] : oracle_levels(f)) EXPECT_EQ(lvl.at(p), n) << f << " " << p;
  }
}

TEST(Size, Examples) {
  const DefTable& d = corpus("ev.lnc").defs;
  LevelMap lvl = assign_levels(d);
  Term u = Term::fvar("u", nt);
  EXPECT_EQ(size(mk_true(), lvl), 1);
  EXPECT_EQ(size(mk_false(), lvl), 1);
  EXPECT_EQ(size(mk_eq(u, u), lvl), 1);
  EXPECT_EQ(size(Term::app(xp("ev", pred1), u), lvl), 1);
  EXPECT_EQ(size(d.unfold("ev", xp("ev", pred1), {u}), lvl), 6);
  EXPECT_EQ(size(term(d, "ev z", Type::prop()), lvl), 7);
}

TEST(Size, UnknownPredicateThrows) {
  const DefTable& d = corpus("ev.lnc").defs;
  try {
    (void)size(term(d, "ev z", Type::prop()), LevelMap{});
    FAIL() << "expected UnknownPredicate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "UnknownPredicate");
  }
}

TEST(IsStratified, Examples) {
  EXPECT_TRUE(is_stratified(corpus("ev.lnc").defs).at("ev"));
  auto non = is_stratified(corpus("nonmono.lnc").defs);
  EXPECT_FALSE(non.at("ev"));
  EXPECT_FALSE(non.at("p"));
  auto strat = is_stratified(corpus("stratified.lnc").defs);
  EXPECT_TRUE(strat.at("ev"));
  EXPECT_TRUE(strat.at("p"));
}

TEST(SubstParams, AppliesAndReduces) {
  const DefTable& d = corpus("ev.lnc").defs;
  Term u = Term::fvar("u", nt);
  Term S = term(d, "\\w : nt. w = z", pred1);
  std::map<Param, Term> m{{Param{"X", "ev"}, S}};
  EXPECT_EQ(subst_params(Term::app(xp("ev", pred1), u), m), mk_eq(u, term(d, "z", nt)));
  Term f = term(d, "ev z", Type::prop());
  EXPECT_EQ(subst_params(f, m), f);
  EXPECT_EQ(subst_params(d.unfold("ev", xp("ev", pred1), {u}), m),
            term(d, "u = z \\/ exists y, u = s (s y) /\\ y = z", Type::prop(), {{"u", nt}}));
}

TEST(SubstParams, WrongTypeThrows) {
  const DefTable& d = corpus("ev.lnc").defs;
  std::map<Param, Term> m{{Param{"X", "ev"}, mk_true()}};
  try {
    (void)subst_params(Term::app(xp("ev", pred1), Term::fvar("u", nt)), m);
    FAIL() << "expected TypeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "TypeMismatch");
  }
}

TEST(LogicProperties, LevelBoundHoldsOnCorpus) {
  for (const auto& f : corpus_files()) {
    const DefTable& d = corpus(f).defs;
    LevelMap lvl = assign_levels(d);
    for (const auto& c : d.clauses()) {
      std::vector<Term> xs;
      for (const Type& a : c.type.args()) xs.push_back(Term::fvar(fresh_name("x"), a));
      int head = size(Term::apps(Term::constant(c.pred, c.type), xs), lvl);
      EXPECT_GT(head, size(d.unfold(c.pred, xp(c.pred, c.type), xs), lvl)) << f << " " << c.pred;
    }
  }
}

TEST(LogicProperties, SizeIgnoresEigenvariableSubstitution) {
  size_t n = 0;
  for (const auto& s : lemma_pool()) {
    const DefTable& d = s.theory->defs;
    LevelMap lvl = assign_levels(d);
    Gen g(s.d.hash());
    auto dom = s.d.concl().free_vars();
    if (dom.empty()) continue;
    for (int i = 0; i < 20; ++i) {
      Subst th = g.subst(d, dom, {});
      for (const auto& f : s.d.concl().left) {
        EXPECT_EQ(size(apply(f, th), lvl), size(f, lvl));
        ++n;
      }
      EXPECT_EQ(size(apply(s.d.concl().right, th), lvl), size(s.d.concl().right, lvl));
    }
  }
  EXPECT_GT(n, 0u);
}

TEST(LogicProperties, EmptyParameterMapIsIdentity) {
  for (const auto& s : lemma_pool()) {
    for (const auto& f : s.d.concl().left) EXPECT_EQ(subst_params(f, {}), f);
    EXPECT_EQ(subst_params(s.d.concl().right, {}), s.d.concl().right);
  }
}
