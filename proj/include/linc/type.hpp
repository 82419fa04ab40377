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

#ifndef LINC_TYPE_HPP
#define LINC_TYPE_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace linc {

// Base class for every error the library raises. `code` is a stable short
// tag (IllTyped, NotAPattern, ...) used by reports and the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Simple types: base types (including the formula type `o`) and arrows.
class Type {
 public:
  Type() = default;

  static Type base(std::string name);
  static Type arrow(Type from, Type to);
  static Type arrows(const std::vector<Type>& args, Type target);
  static Type prop();

  bool valid() const { return node_ != nullptr; }
  bool is_base() const;
  bool is_arrow() const { return !is_base(); }
  bool is_prop() const;

  const std::string& name() const;
  const Type& from() const;
  const Type& to() const;

  // Argument types of the uncurried view, e.g. a -> b -> o gives {a, b}.
  std::vector<Type> args() const;
  // Final codomain, e.g. a -> b -> o gives o.
  Type target() const;
  size_t arity() const;

  // Essentially first-order: no occurrence of `o` anywhere.
  bool is_efo() const;

  bool operator==(const Type& other) const;
  bool operator!=(const Type& other) const { return !(*this == other); }
  size_t hash() const;

  std::string str() const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace linc

#endif  // LINC_TYPE_HPP
