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

#include "linc/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "linc/elaborate.hpp"
#include "linc/kernel.hpp"
#include "linc/printer.hpp"
#include "linc/reduce.hpp"
#include "linc/search.hpp"
#include "linc/transform.hpp"

namespace linc {

namespace {

using json = nlohmann::json;

struct Input {
  std::string file;
  Theory th;
};

// Loads and validates a file; reports and returns false on failure.
bool load(const std::string& file, Input& in, std::ostream& err) {
  in.file = file;
  try {
    in.th = load_theory(file);
  } catch (const SyntaxError& e) {
    err << file << ":" << e.what() << " [" << e.code() << "]\n";
    return false;
  } catch (const Error& e) {
    err << file << ": " << e.what() << " [" << e.code() << "]\n";
    return false;
  }
  if (!in.th.diagnostics.empty()) {
    for (const auto& d : in.th.diagnostics)
      err << file << ":" << d.line << ":" << d.col << ": " << d.message << " [" << d.code << "]\n";
    return false;
  }
  return true;
}

json path_json(const std::vector<int>& p) {
  json a = json::array();
  for (int i : p) a.push_back(i);
  return a;
}

std::string path_str(const std::vector<int>& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

std::string binders(const Sequent& s) {
  std::string out;
  for (const auto& [x, ty] : s.free_vars()) out += " (" + x + " : " + ty.str() + ")";
  return out;
}

std::string proof_decl(const DefTable& d, const std::string& name, const Derivation& pi) {
  return "proof " + name + binders(pi.concl()) + " : " + show(pi.concl()) + " :=\n  " + show_script(d, pi, 2) + ".\n";
}

int cmd_check(const std::string& file, bool as_json, bool dump, std::ostream& out, std::ostream& err) {
  Input in;
  if (!load(file, in, err)) return kExitInput;
  const DefTable& d = in.th.defs;
  bool all_ok = true;
  json report = {{"schema", 1}, {"command", "check"}, {"file", file}};
  json proofs = json::array();
  for (const auto& e : in.th.proofs) {
    json pj = {{"name", e.name}, {"sequent", show(e.seq)}};
    json viols = json::array();
    bool ok = true;
    if (!e.ok()) {
      ok = false;
      viols.push_back({{"path", json::array()},
                       {"code", e.error_code},
                       {"message", e.error_message},
                       {"line", e.error_span.line},
                       {"col", e.error_span.col}});
      err << file << ":" << e.error_message << " [" << e.error_code << "]\n";
    } else {
      CheckReport r = check(d, e.proof);
      ok = r.ok;
      for (const auto& v : r.violations) {
        viols.push_back({{"path", path_json(v.path)}, {"code", v.code}, {"message", v.message}});
        err << file << ": proof " << e.name << " at " << path_str(v.path) << ": " << v.message << " [" << v.code
            << "]\n";
      }
      pj["size"] = e.proof.size();
      pj["height"] = e.proof.height();
      pj["cut_free"] = e.proof.cut_free();
    }
    pj["ok"] = ok;
    pj["violations"] = viols;
    proofs.push_back(pj);
    all_ok = all_ok && ok;
    if (!as_json) {
      out << e.name << ": " << (ok ? "ok" : "FAILED");
      if (e.ok()) out << " (size " << e.proof.size() << ", height " << e.proof.height() << ")";
      out << "\n";
      if (ok && dump) out << show_script(d, rename_internal(e.proof), 2) << "\n";
    }
  }
  report["proofs"] = proofs;
  report["ok"] = all_ok;
  if (as_json) {
    if (dump) {
      json canon = json::object();
      for (const auto& e : in.th.proofs)
        if (e.ok()) canon[e.name] = show_script(d, rename_internal(e.proof));
      report["canonical"] = canon;
    }
    out << report.dump(2) << "\n";
  }
  return all_ok ? kExitOk : kExitCheck;
}

json trace_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"path", path_json(s.step.path)},
                     {"case", s.step.case_name},
                     {"family", family_name(s.step.family)},
                     {"index", s.step.cut_index},
                     {"size_after", s.size_after}});
  return {{"schema", 1},
          {"initial", show(t.initial)},
          {"final", show(t.final)},
          {"step_count", t.steps.size()},
          {"final_size", t.final_size},
          {"steps", steps}};
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream o(path, std::ios::binary);
  if (!o) {
    err << "cannot write " << path << "\n";
    return false;
  }
  o << text;
  return true;
}

int cmd_normalize(const std::string& file, const std::string& name, std::optional<size_t> fuel,
                  const std::string& trace_out, const std::string& output, std::ostream& out, std::ostream& err) {
  Input in;
  if (!load(file, in, err)) return kExitInput;
  const DefTable& d = in.th.defs;
  const ProofEntry* e = in.th.proof(name);
  if (!e) {
    err << file << ": no proof named " << name << "\n";
    return kExitInput;
  }
  if (!e->ok()) {
    err << file << ":" << e->error_message << " [" << e->error_code << "]\n";
    return kExitCheck;
  }
  CheckReport r = check(d, e->proof);
  if (!r.ok) {
    for (const auto& v : r.violations) err << file << ": at " << path_str(v.path) << ": " << v.message << "\n";
    return kExitCheck;
  }
  try {
    NormalizeResult res = normalize(d, e->proof, fuel ? *fuel : default_fuel());
    if (!trace_out.empty() && !write_file(trace_out, trace_json(res.trace).dump(2) + "\n", err)) return kExitInput;
    std::string text = proof_decl(d, name + "_nf", res.result);
    if (!output.empty()) {
      if (!write_file(output, text, err)) return kExitInput;
    } else {
      out << text;
    }
    err << name << ": " << res.trace.steps.size() << " steps, size " << e->proof.size() << " -> "
        << res.result.size() << "\n";
    return kExitOk;
  } catch (const FuelExhausted& f) {
    if (!trace_out.empty()) write_file(trace_out, trace_json(f.trace()).dump(2) + "\n", err);
    err << name << ": " << f.what() << "\n";
    return kExitFuel;
  }
}

int cmd_levels(const std::string& file, bool as_json, std::ostream& out, std::ostream& err) {
  Input in;
  if (!load(file, in, err)) return kExitInput;
  LevelMap lv = assign_levels(in.th.defs);
  json j = {{"schema", 1}, {"command", "levels"}, {"file", file}};
  json levels = json::object();
  for (const auto& p : in.th.defs.sig.predicates()) {
    auto it = lv.find(p);
    if (it == lv.end()) continue;
    levels[p] = it->second;
    if (!as_json) out << p << " : " << it->second << "\n";
  }
  j["levels"] = levels;
  if (as_json) out << j.dump(2) << "\n";
  return kExitOk;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_search(const std::string& file, const std::string& goal, const SearchBudget& b, const std::string& invs,
               bool as_json, std::ostream& out, std::ostream& err) {
  Input in;
  if (!load(file, in, err)) return kExitInput;
  const DefTable& d = in.th.defs;
  Sequent g;
  try {
    if (const GoalEntry* ge = in.th.goal(goal))
      g = ge->seq;
    else
      g = read_sequent(d, goal);
  } catch (const Error& e) {
    err << "goal: " << e.what() << " [" << e.code() << "]\n";
    return kExitInput;
  }
  InvariantTable table;
  for (const auto& n : split_commas(invs)) {
    const NamedInvariant* inv = in.th.invariant(n);
    if (!inv) {
      err << file << ": no invariant named " << n << "\n";
      return kExitInput;
    }
    table.emplace(inv->pred, inv->term);
  }
  SearchStats st;
  std::optional<Derivation> r;
  try {
    r = bounded_search(d, g, b, table, &st);
  } catch (const Error& e) {
    err << "search: " << e.what() << " [" << e.code() << "]\n";
    return kExitInput;
  }
  if (as_json) {
    json j = {{"schema", 1}, {"command", "search"}, {"goal", show(g)}, {"found", r.has_value()},
              {"nodes", st.nodes}, {"exhausted", st.exhausted}};
    if (r) j["proof"] = show_script(d, *r);
    out << j.dump(2) << "\n";
  } else if (r) {
    out << proof_decl(d, "found", *r);
  } else {
    out << "not found within budget\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"checker and cut eliminator for a sequent calculus with (co)induction", "linc"};
  app.require_subcommand(1);

  std::string file, proof, trace_out, output, goal, invs;
  bool as_json = false, dump = false;
  size_t fuel = 0;
  SearchBudget budget;

  auto* check = app.add_subcommand("check", "check every proof in a file");
  check->add_option("file", file, "input .lnc file")->required();
  check->add_flag("--json", as_json, "JSON report on stdout");
  check->add_flag("--dump-canonical", dump, "print each proof with canonical internal names");

  auto* norm = app.add_subcommand("normalize", "eliminate cuts from a proof");
  norm->add_option("file", file, "input .lnc file")->required();
  norm->add_option("--proof", proof, "proof name")->required();
  auto* fuel_opt = norm->add_option("--fuel", fuel, "maximum number of reduction steps");
  norm->add_option("--trace", trace_out, "write the reduction trace as JSON");
  norm->add_option("--output", output, "write the normalized proof here instead of stdout");

  auto* lv = app.add_subcommand("levels", "print the predicate level assignment");
  lv->add_option("file", file, "input .lnc file")->required();
  lv->add_flag("--json", as_json, "JSON output");

  auto* se = app.add_subcommand("search", "bounded cut-free proof search");
  se->add_option("file", file, "input .lnc file")->required();
  se->add_option("--goal", goal, "sequent such as \"|- ev z\", or a goal name")->required();
  se->add_option("--depth", budget.depth, "depth bound")->required();
  se->add_option("--unfold", budget.unfold, "unfolding bound per predicate");
  se->add_option("--nodes", budget.nodes, "node budget");
  se->add_option("--invariants", invs, "comma-separated invariant names");
  se->add_flag("--json", as_json, "JSON output");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  if (*check) return cmd_check(file, as_json, dump, out, err);
  if (*norm) return cmd_normalize(file, proof, fuel_opt->count() ? std::optional<size_t>(fuel) : std::nullopt,
                                  trace_out, output, out, err);
  if (*lv) return cmd_levels(file, as_json, out, err);
  return cmd_search(file, goal, budget, invs, as_json, out, err);
}

}  // namespace linc
