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

#include "deskbench/value.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace deskbench {

const char* ToString(ValueKind kind) {
  switch (kind) {
    case ValueKind::kNull:
      return "null";
    case ValueKind::kBool:
      return "boolean";
    case ValueKind::kNumber:
      return "number";
    case ValueKind::kString:
      return "string";
    case ValueKind::kList:
      return "list";
    case ValueKind::kMap:
      return "map";
  }
  return "?";
}

const Value& NullValue() {
  static const Value kNull;
  return kNull;
}

const Value& Value::operator[](std::string_view key) const {
  if (!is_map()) return NullValue();
  const auto& m = as_map();
  auto it = m.find(key);
  return it == m.end() ? NullValue() : it->second;
}

const Value& Value::at_index(long long index) const {
  if (!is_list()) return NullValue();
  const auto& l = as_list();
  const auto n = static_cast<long long>(l.size());
  if (index < 0) index += n;
  if (index < 0 || index >= n) return NullValue();
  return l[static_cast<size_t>(index)];
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueKind::kNull:
      return true;
    case ValueKind::kBool:
      return a.as_bool() == b.as_bool();
    case ValueKind::kNumber:
      return a.as_number() == b.as_number();
    case ValueKind::kString:
      return a.as_string() == b.as_string();
    case ValueKind::kList:
      return a.as_list() == b.as_list();
    case ValueKind::kMap:
      return a.as_map() == b.as_map();
  }
  return false;
}

std::string FormatNumber(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  if (d == std::floor(d) && std::fabs(d) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", d);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", d);
  // Prefer the shortest representation that round-trips.
  if (std::strtod(buf, nullptr) != d) {
    std::snprintf(buf, sizeof buf, "%.17g", d);
  }
  return buf;
}

std::string Value::Repr() const {
  switch (kind()) {
    case ValueKind::kNull:
      return "null";
    case ValueKind::kBool:
      return as_bool() ? "true" : "false";
    case ValueKind::kNumber:
      return FormatNumber(as_number());
    case ValueKind::kString:
      return DumpJson(nlohmann::json(as_string()));
    case ValueKind::kList: {
      std::string out = "[";
      bool first = true;
      for (const auto& e : as_list()) {
        if (!first) out += ", ";
        first = false;
        out += e.Repr();
      }
      return out + "]";
    }
    case ValueKind::kMap: {
      std::string out = "{";
      bool first = true;
      for (const auto& [k, e] : as_map()) {
        if (!first) out += ", ";
        first = false;
        out += DumpJson(nlohmann::json(k)) + ": " + e.Repr();
      }
      return out + "}";
    }
  }
  return "?";
}

nlohmann::json ToJson(const Value& v) {
  switch (v.kind()) {
    case ValueKind::kNull:
      return nullptr;
    case ValueKind::kBool:
      return v.as_bool();
    case ValueKind::kNumber: {
      double d = v.as_number();
      if (d == std::floor(d) && std::fabs(d) < 9.0e15) {
        return static_cast<int64_t>(d);
      }
      return d;
    }
    case ValueKind::kString:
      return v.as_string();
    case ValueKind::kList: {
      auto arr = nlohmann::json::array();
      for (const auto& e : v.as_list()) arr.push_back(ToJson(e));
      return arr;
    }
    case ValueKind::kMap: {
      auto obj = nlohmann::json::object();
      for (const auto& [k, e] : v.as_map()) obj[k] = ToJson(e);
      return obj;
    }
  }
  return nullptr;
}

Value FromJson(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
    case nlohmann::json::value_t::discarded:
      return {};
    case nlohmann::json::value_t::boolean:
      return j.get<bool>();
    case nlohmann::json::value_t::number_integer:
      return static_cast<double>(j.get<int64_t>());
    case nlohmann::json::value_t::number_unsigned:
      return static_cast<double>(j.get<uint64_t>());
    case nlohmann::json::value_t::number_float:
      return j.get<double>();
    case nlohmann::json::value_t::string:
      return j.get<std::string>();
    case nlohmann::json::value_t::array: {
      List l;
      l.reserve(j.size());
      for (const auto& e : j) l.push_back(FromJson(e));
      return l;
    }
    case nlohmann::json::value_t::object: {
      Map m;
      for (const auto& [k, e] : j.items()) m.emplace(k, FromJson(e));
      return m;
    }
    case nlohmann::json::value_t::binary:
      return {};
  }
  return {};
}

const Value& LookupPath(const Value& root, std::string_view dotted) {
  const Value* cur = &root;
  size_t start = 0;
  while (start <= dotted.size()) {
    size_t dot = dotted.find('.', start);
    std::string_view part = dotted.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start);
    cur = &(*cur)[part];
    if (cur->is_null() || dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return *cur;
}

std::string DumpJson(const nlohmann::json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace deskbench
