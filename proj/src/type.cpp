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

#include "linc/type.hpp"

#include <functional>

namespace linc {

struct Type::Node {
  std::string name;  // empty for arrows
  Type from, to;
  size_t hash = 0;
};

Type Type::base(std::string name) {
  auto n = std::make_shared<Node>();
  n->hash = std::hash<std::string>{}(name);
  n->name = std::move(name);
  return Type(std::move(n));
}

Type Type::arrow(Type from, Type to) {
  auto n = std::make_shared<Node>();
  n->hash = from.hash() * 31 + to.hash() * 17 + 7;
  n->from = std::move(from);
  n->to = std::move(to);
  return Type(std::move(n));
}

Type Type::arrows(const std::vector<Type>& args, Type target) {
  Type t = std::move(target);
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = arrow(*it, t);
  return t;
}

Type Type::prop() {
  static const Type o = base("o");
  return o;
}

bool Type::is_base() const { return !node_->name.empty(); }
bool Type::is_prop() const { return is_base() && node_->name == "o"; }
const std::string& Type::name() const { return node_->name; }
const Type& Type::from() const { return node_->from; }
const Type& Type::to() const { return node_->to; }

std::vector<Type> Type::args() const {
  std::vector<Type> out;
  const Type* t = this;
  while (t->is_arrow()) {
    out.push_back(t->from());
    t = &t->to();
  }
  return out;
}

Type Type::target() const {
  const Type* t = this;
  while (t->is_arrow()) t = &t->to();
  return *t;
}

size_t Type::arity() const {
  size_t n = 0;
  for (const Type* t = this; t->is_arrow(); t = &t->to()) ++n;
  return n;
}

bool Type::is_efo() const {
  if (is_base()) return !is_prop();
  return from().is_efo() && to().is_efo();
}

bool Type::operator==(const Type& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash) return false;
  if (is_base() != other.is_base()) return false;
  if (is_base()) return name() == other.name();
  return from() == other.from() && to() == other.to();
}

size_t Type::hash() const { return node_ ? node_->hash : 0; }

std::string Type::str() const {
  if (!node_) return "<no type>";
  if (is_base()) return name();
  std::string lhs = from().str();
  if (from().is_arrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + to().str();
}

}  // namespace linc
