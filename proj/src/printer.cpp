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

#include "linc/printer.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "linc/formula.hpp"
#include "linc/elaborate.hpp"
#include "linc/kernel.hpp"
#include "linc/syntax.hpp"

namespace linc {

namespace {

void atom_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::FVar:
    case TermKind::Const:
      out.insert(t.name());
      return;
    case TermKind::Param:
      out.insert(t.param().name);
      return;
    case TermKind::Lam:
      atom_names(t.body(), out);
      return;
    case TermKind::App:
      atom_names(t.fun(), out);
      atom_names(t.arg(), out);
      return;
    default:
      return;
  }
}

class TermPrinter {
 public:
  explicit TermPrinter(const Term& t) { atom_names(t, taken_); }

  // Precedence levels: 0 implication / binders, 1 or, 2 and, 3 equality,
  // 4 application, 5 atoms.
  std::string print(const Term& t, int prec) {
    switch (t.kind()) {
      case TermKind::BVar:
        if (t.index() < names_.size()) return names_[names_.size() - 1 - t.index()];
        return "#" + std::to_string(t.index());
      case TermKind::FVar:
      case TermKind::Const:
        return t.name();
      case TermKind::Param:
        return t.param().str();
      case TermKind::Lam: {
        std::string n = bind(t.name());
        std::string body = print(t.body(), 0);
        names_.pop_back();
        return paren(prec > 0, "\\" + n + " : " + t.type().str() + ". " + body);
      }
      case TermKind::App:
        break;
    }
    Term h = t.head();
    std::vector<Term> args = t.args();
    if (h.is(TermKind::Const) && is_logical_constant(h.name())) {
      const std::string& c = h.name();
      if (args.size() == 2 && (c == conn::kAnd || c == conn::kOr || c == conn::kImp || c == conn::kEq)) {
        if (c == conn::kImp) return paren(prec > 0, print(args[0], 1) + " => " + print(args[1], 0));
        if (c == conn::kOr) return paren(prec > 1, print(args[0], 2) + " \\/ " + print(args[1], 1));
        if (c == conn::kAnd) return paren(prec > 2, print(args[0], 3) + " /\\ " + print(args[1], 2));
        return paren(prec > 3, print(args[0], 4) + " = " + print(args[1], 4));
      }
      if (args.size() == 1 && args[0].is(TermKind::Lam) && (c == conn::kForall || c == conn::kExists)) {
        const Term& abs = args[0];
        std::string n = bind(abs.name());
        std::string body = print(abs.body(), 0);
        names_.pop_back();
        return paren(prec > 0, c + " (" + n + " : " + abs.type().str() + "), " + body);
      }
    }
    std::string out = print(h, 5);
    for (const auto& a : args) out += " " + print(a, 5);
    return paren(prec > 4, out);
  }

 private:
  std::set<std::string> taken_;
  std::vector<std::string> names_;

  static std::string paren(bool p, const std::string& s) { return p ? "(" + s + ")" : s; }

  std::string bind(const std::string& hint) {
    std::string base(strip_fresh_suffix(hint));
    if (base.empty() || !(std::isalpha(static_cast<unsigned char>(base[0])) || base[0] == '_')) base = "x";
    std::string n = base;
    for (int i = 1; clashes(n); ++i) n = base + std::to_string(i);
    names_.push_back(n);
    return n;
  }

  bool clashes(const std::string& n) const {
    if (taken_.count(n)) return true;
    for (const auto& b : names_)
      if (b == n) return true;
    return false;
  }
};

}  // namespace

std::string show(const Term& t) {
  if (!t.valid()) return "<none>";
  return TermPrinter(t).print(t, 0);
}

std::string show(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.left.size(); ++i) out += (i ? ", " : "") + show(s.left[i]);
  return out + (out.empty() ? "|- " : " |- ") + show(s.right);
}

std::string show(const Subst& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& [x, e] : s) {
    out += (first ? "" : ", ") + x + " := " + show(e.value);
    first = false;
  }
  return out + "]";
}

std::string show_tree(const Derivation& d) {
  std::ostringstream os;
  std::function<void(const Derivation&, int)> go = [&](const Derivation& n, int depth) {
    os << std::string(static_cast<size_t>(depth) * 2, ' ') << rule_name(n.rule());
    if (n.payload().index >= 0) os << " " << n.payload().index;
    os << "   " << show(n.concl()) << "\n";
    for (const auto& c : n.children()) go(c, depth + 1);
  };
  go(d, 0);
  return os.str();
}

std::string show_script(const DefTable& defs, const Derivation& d, int indent) {
  return print_step(to_script(defs, d), indent);
}

}  // namespace linc
