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

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace deskbench {

class Value;

using List = std::vector<Value>;
using Map = std::map<std::string, Value, std::less<>>;

enum class ValueKind { kNull, kBool, kNumber, kString, kList, kMap };

const char* ToString(ValueKind kind);

// Dynamically typed carrier for snapshot data and DSL results. Numbers are
// always doubles. There are no implicit coercions between kinds.
class Value {
 public:
  Value() = default;
  Value(std::nullptr_t) {}
  Value(bool b) : data_(b) {}
  Value(double d) : data_(d) {}
  Value(int i) : data_(static_cast<double>(i)) {}
  Value(long i) : data_(static_cast<double>(i)) {}
  Value(long long i) : data_(static_cast<double>(i)) {}
  Value(unsigned i) : data_(static_cast<double>(i)) {}
  Value(unsigned long i) : data_(static_cast<double>(i)) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(std::string_view s) : data_(std::string(s)) {}
  Value(List l) : data_(std::move(l)) {}
  Value(Map m) : data_(std::move(m)) {}

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }
  bool is_null() const { return kind() == ValueKind::kNull; }
  bool is_bool() const { return kind() == ValueKind::kBool; }
  bool is_number() const { return kind() == ValueKind::kNumber; }
  bool is_string() const { return kind() == ValueKind::kString; }
  bool is_list() const { return kind() == ValueKind::kList; }
  bool is_map() const { return kind() == ValueKind::kMap; }

  // Unchecked accessors; callers test the kind first.
  bool as_bool() const { return std::get<bool>(data_); }
  double as_number() const { return std::get<double>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  const List& as_list() const { return std::get<List>(data_); }
  const Map& as_map() const { return std::get<Map>(data_); }
  List& as_list() { return std::get<List>(data_); }
  Map& as_map() { return std::get<Map>(data_); }

  // Map lookup; null when this is not a map or the key is absent.
  const Value& operator[](std::string_view key) const;
  // List lookup with Python-style negative indices; null when out of range.
  const Value& at_index(long long index) const;

  // Deep structural equality. Numbers compare with ==, so 1 == 1.0.
  friend bool operator==(const Value& a, const Value& b);

  // Compact JSON-like rendering used in diagnostics and DSL string output.
  std::string Repr() const;

 private:
  std::variant<std::monostate, bool, double, std::string, List, Map> data_;
};

const Value& NullValue();

nlohmann::json ToJson(const Value& v);
// Compact serialization; invalid UTF-8 is replaced rather than rejected.
std::string DumpJson(const nlohmann::json& j);
Value FromJson(const nlohmann::json& j);

// Renders a number without a trailing ".0" when it is integral.
std::string FormatNumber(double d);

// Looks up a dot-joined path ("objects.Earth.distance") in nested maps.
const Value& LookupPath(const Value& root, std::string_view dotted);

}  // namespace deskbench
