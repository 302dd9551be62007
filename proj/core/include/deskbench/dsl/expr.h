// Copyright 2026 The Deskbench Authors
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

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deskbench/value.h"

// A closed expression language for evaluation predicates:
//
//   lambda := "lambda" ident ("," ident)* ":" expr
//   expr   := or-expr with and / or / not over comparisons
//             (== != < <= > >=, chainable) over + - * / and unary minus
//             over postfix indexing e[e] and the methods .endswith(s)
//             .startswith(s) .strip() .lower() over atoms.
//   atoms  := number | 'str' | "str" | true/false/True/False | null/None |
//             parameter | builtin call | ( expr ) | [ list, ... ]
//
// Builtins: len abs min max sorted_lines. Anything else is rejected when
// parsing, so a parsed expression can only touch its own arguments.
namespace deskbench::dsl {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string message, size_t position);
  const std::string& message() const { return message_; }
  size_t position() const { return position_; }

 private:
  std::string message_;
  size_t position_;
};

struct Node;

class Expr {
 public:
  const std::string& source() const { return source_; }
  const std::vector<std::string>& params() const { return params_; }
  size_t arity() const { return params_.size(); }
  const Node& body() const { return *body_; }

 private:
  friend Expr ParseExpression(std::string_view source);
  std::string source_;
  std::vector<std::string> params_;
  std::shared_ptr<const Node> body_;
};

// Throws SyntaxError.
Expr ParseExpression(std::string_view source);

// True when `source` looks like a lambda (leading "lambda" keyword). Check
// keys use this to tell predicates from literal application queries.
bool IsLambdaSource(std::string_view source);

struct Fault {
  std::string message;
  // Source text of the innermost failing subexpression.
  std::string subexpression;
};

struct Outcome {
  Value value;
  std::optional<Fault> fault;
  bool ok() const { return !fault.has_value(); }
};

// Pure evaluation; never throws. Type errors and arity mismatches come back
// as a Fault.
Outcome Evaluate(const Expr& expr, std::span<const Value> args);

// Python-style truthiness: null, false, 0, and empty containers are false.
bool Truthy(const Value& v);

// Sorted list of whitespace-trimmed lines. A trailing newline does not start
// an extra empty line.
List SortedLines(std::string_view text);

}  // namespace deskbench::dsl
