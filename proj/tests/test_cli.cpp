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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "linc/cli.hpp"
#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/syntax.hpp"
#include "support.hpp"

using namespace linc;
using namespace linc::testkit;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "linc_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Parse, EvFileHasOneInductiveClause) {
  SourceFile f = parse_file(corpus_dir() + "/ev.lnc");
  size_t defs = 0;
  for (const auto& d : f.decls)
    if (d.kind == SDecl::Kind::Define) {
      ++defs;
      EXPECT_EQ(d.flavor, Fixpoint::Mu);
      EXPECT_EQ(d.names.front(), "ev");
    }
  EXPECT_EQ(defs, 1u);
}

TEST(Parse, UnclosedDefineReportsPosition) {
  try {
    (void)parse_source("kind nt : type.\ndefine mu p : o :=\n  p := true");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), "ParseError");
    EXPECT_EQ(e.span().line, 3);
    EXPECT_GT(e.span().col, 0);
    EXPECT_EQ(std::string(e.what()).rfind("3:", 0), 0u);
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_term_text("a => b => c"), parse_term_text("a => (b => c)"));
  EXPECT_EQ(parse_term_text("a \\/ b /\\ c"), parse_term_text("a \\/ (b /\\ c)"));
  EXPECT_EQ(parse_term_text("f x = y /\\ p"), parse_term_text("((f x) = y) /\\ p"));
  EXPECT_EQ(parse_term_text("a /\\ forall x, b x"), parse_term_text("a /\\ (forall x, b x)"));
}

TEST(RoundTrip, SourceFiles) {
  for (const auto& f : corpus_files()) {
    SourceFile a = parse_file(f);
    EXPECT_EQ(parse_source(print_source(a)), a) << f;
  }
}

TEST(RoundTrip, PrintedProofsElaborateToCanonicalOrder) {
  for (const auto& s : corpus_proofs()) {
    const DefTable& d = s.theory->defs;
    for (const Derivation& pi : {s.d, normalize(d, s.d).result}) {
      std::string text = show_script(d, pi);
      try {
        Derivation back = elaborate_script(*s.theory, pi.concl(), parse_script_text(text));
        EXPECT_EQ(back, canonical_order(d, pi)) << s.origin << "\n" << text;
      } catch (const Error& e) {
        ADD_FAILURE() << s.origin << ": " << e.what() << "\n" << text;
      }
    }
  }
}

TEST(Elaborate, CorpusProofsAllCheck) {
  for (const auto& f : corpus_files()) {
    const Theory& th = corpus(f);
    EXPECT_TRUE(th.diagnostics.empty()) << f;
    for (const auto& p : th.proofs) EXPECT_TRUE(p.ok()) << f << ":" << p.name << " " << p.error_message;
  }
}

TEST(Elaborate, BrokenScriptKeepsErrorLocation) {
  Theory th = elaborate(parse_source(R"(
    kind nt : type.
    type z : nt.
    type s : nt -> nt.
    proof bad : |- z = s z :=
      eqR.
  )"));
  const ProofEntry* p = th.proof("bad");
  ASSERT_TRUE(p);
  EXPECT_FALSE(p->ok());
  EXPECT_EQ(p->error_code, "NotReflexive");
  EXPECT_EQ(p->error_span.line, 6);
}

TEST(Cli, LevelsOfEv) {
  CliRun r = cli({"levels", corpus_dir() + "/ev.lnc"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("ev : 7"), std::string::npos) << r.out;
  CliRun j = cli({"levels", corpus_dir() + "/ev.lnc", "--json"});
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["schema"], 1);
}

TEST(Cli, CheckFreeness) {
  CliRun r = cli({"check", corpus_dir() + "/freeness.lnc"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  CliRun j = cli({"check", corpus_dir() + "/freeness.lnc", "--json"});
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["schema"], 1);
}

TEST(Cli, EveryCorpusFileChecksWithinASecond) {
  for (const auto& f : corpus_files()) {
    auto t0 = std::chrono::steady_clock::now();
    CliRun r = cli({"check", f});
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(r.code, kExitOk) << f << "\n" << r.err;
    EXPECT_LT(dt, 1.0) << f;
  }
}

TEST(Cli, NormalizeWritesACutFreeProof) {
  std::string out = scratch("main_nf.lnc").string();
  std::string trace = scratch("main_trace.json").string();
  std::string src = corpus_dir() + "/ev_cut.lnc";
  CliRun r = cli({"normalize", src, "--proof", "main", "--output", out, "--trace", trace});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::string combined = write("combined.lnc", slurp(src) + "\n" + slurp(out));
  Theory th = load_theory(combined);
  const ProofEntry* nf = th.proof("main_nf");
  ASSERT_TRUE(nf && nf->ok()) << slurp(out);
  EXPECT_TRUE(is_cut_free(nf->proof));
  EXPECT_EQ(nf->seq, th.proof("main")->seq);
  EXPECT_EQ(cli({"check", combined}).code, kExitOk);

  auto doc = nlohmann::json::parse(slurp(trace));
  EXPECT_EQ(doc["schema"], 1);
  ASSERT_TRUE(doc["steps"].is_array());
  EXPECT_EQ(doc["steps"].size(), doc["step_count"].get<size_t>());
  for (const auto& s : doc["steps"]) {
    EXPECT_TRUE(s.contains("path"));
    EXPECT_TRUE(s.contains("case"));
    EXPECT_TRUE(s.contains("index"));
    EXPECT_TRUE(s.contains("size_after"));
  }
}

TEST(Cli, ExitCodes) {
  std::string src = corpus_dir() + "/ev_cut.lnc";
  EXPECT_EQ(cli({"normalize", src, "--proof", "ind_top", "--fuel", "1"}).code, kExitFuel);
  EXPECT_EQ(cli({"normalize", src, "--proof", "nope"}).code, kExitInput);
  std::string bad = write("bad.lnc", "kind nt : type.\ntype z : nt.\ntype s : nt -> nt.\nproof b : |- z = s z := eqR.\n");
  CliRun r = cli({"check", bad});
  EXPECT_EQ(r.code, kExitCheck);
  EXPECT_NE(r.err.find("4:"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"check", write("syntax.lnc", "kind nt : type")}).code, kExitInput);
  EXPECT_EQ(cli({"check", "/nonexistent/file.lnc"}).code, kExitInput);
  EXPECT_NE(cli({}).code, kExitOk);
}

TEST(Cli, FuelFromEnvironment) {
  std::string src = corpus_dir() + "/ev_cut.lnc";
  ::setenv("LINC_FUEL", "1", 1);
  int code = cli({"normalize", src, "--proof", "ind_top"}).code;
  ::unsetenv("LINC_FUEL");
  EXPECT_EQ(code, kExitFuel);
}

TEST(Cli, Search) {
  std::string f = corpus_dir() + "/freeness.lnc";
  CliRun r = cli({"search", f, "--goal", "|- forall x, z = s x => false", "--depth", "4"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("proof found"), std::string::npos);
  CliRun none = cli({"search", corpus_dir() + "/nonmono.lnc", "--goal", "liar", "--depth", "8"});
  EXPECT_EQ(none.code, kExitOk);
  EXPECT_NE(none.out.find("not found within budget"), std::string::npos);
  CliRun j = cli({"search", f, "--goal", "|- true", "--depth", "2", "--json"});
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["schema"], 1);
}
