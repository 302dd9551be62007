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

#include "deskbench/agent/policy.h"

#include <httplib.h>

#include <cstdlib>
#include <fstream>

#include "deskbench/digest.h"

namespace deskbench {

ChatMessage ChatMessage::Text(std::string role, std::string text) {
  ChatMessage m;
  m.role = std::move(role);
  m.parts.push_back({ContentPart::Kind::kText, std::move(text), {}});
  return m;
}

std::string ChatMessage::JoinedText() const {
  std::string out;
  for (const ContentPart& p : parts) {
    if (p.kind != ContentPart::Kind::kText) continue;
    if (!out.empty()) out += '\n';
    out += p.text;
  }
  return out;
}

const char* ToString(PolicyRole r) {
  switch (r) {
    case PolicyRole::kActor: return "actor";
    case PolicyRole::kPlanner: return "planner";
    case PolicyRole::kGrounder: return "grounder";
  }
  return "actor";
}

void Policy::BeginEpisode(const Task&, std::uint64_t) {}

namespace {

std::vector<std::string> ReplyList(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw std::runtime_error(where + ": expected a reply list");
  std::vector<std::string> out;
  for (const auto& r : j) {
    if (!r.is_string()) throw std::runtime_error(where + ": replies must be strings");
    out.push_back(r.get<std::string>());
  }
  return out;
}

}  // namespace

ScriptedPolicy::ScriptedPolicy(nlohmann::json script) {
  if (!script.is_object()) throw std::runtime_error("script must be an object");
  if (script.contains("default")) default_ = ReplyList(script["default"], "default");
  if (script.contains("tasks")) {
    for (const auto& [id, entry] : script["tasks"].items()) {
      Replies replies;
      if (entry.is_object()) {
        for (const auto& [role, list] : entry.items()) {
          if (role != "actor" && role != "planner" && role != "grounder") {
            throw std::runtime_error("tasks." + id + ": unknown role '" + role + "'");
          }
          replies[role] = ReplyList(list, "tasks." + id + "." + role);
        }
      } else {
        replies["actor"] = ReplyList(entry, "tasks." + id);
      }
      tasks_[id] = std::move(replies);
    }
  }
}

nlohmann::json ScriptedPolicy::LoadScript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read script " + path);
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("script " + path + " is not valid JSON");
  return j;
}

void ScriptedPolicy::BeginEpisode(const Task&, std::uint64_t) { calls_.clear(); }

std::string ScriptedPolicy::Act(const PolicyRequest& request) {
  size_t n = calls_[request.role]++;
  const std::vector<std::string>* list = &default_;
  auto t = tasks_.find(request.task.id);
  if (t != tasks_.end()) {
    std::string role = ToString(request.role);
    auto r = t->second.find(role);
    // Planner turns fall back to the actor list.
    if (r == t->second.end() && request.role == PolicyRole::kPlanner) {
      r = t->second.find("actor");
    }
    if (r != t->second.end()) list = &r->second;
  }
  if (list->empty()) return "";
  return (*list)[std::min(n, list->size() - 1)];
}

RemotePolicy::RemotePolicy(RemotePolicyConfig config) : config_(std::move(config)) {
  if (config_.api_key.empty()) {
    if (const char* k = std::getenv("DESKBENCH_API_KEY")) config_.api_key = k;
  }
}

nlohmann::json RemotePolicy::RequestBody(const Prompt& prompt) const {
  nlohmann::json messages = nlohmann::json::array();
  for (const ChatMessage& m : prompt) {
    bool has_image = std::any_of(m.parts.begin(), m.parts.end(), [](const ContentPart& p) {
      return p.kind == ContentPart::Kind::kImage;
    });
    if (!has_image) {
      messages.push_back({{"role", m.role}, {"content", m.JoinedText()}});
      continue;
    }
    nlohmann::json parts = nlohmann::json::array();
    for (const ContentPart& p : m.parts) {
      if (p.kind == ContentPart::Kind::kText) {
        parts.push_back({{"type", "text"}, {"text", p.text}});
      } else {
        parts.push_back({{"type", "image_url"},
                         {"image_url",
                          {{"url", "data:image/png;base64," + Base64Encode(p.image_png)}}}});
      }
    }
    messages.push_back({{"role", m.role}, {"content", std::move(parts)}});
  }
  return {{"model", config_.model},           {"messages", std::move(messages)},
          {"temperature", config_.temperature}, {"top_p", config_.top_p},
          {"max_tokens", config_.max_tokens}};
}

std::string RemotePolicy::Act(const PolicyRequest& request) {
  size_t scheme = config_.url.find("://");
  if (scheme == std::string::npos) throw PolicyTransportError("bad policy url " + config_.url);
  size_t slash = config_.url.find('/', scheme + 3);
  std::string origin = config_.url.substr(0, slash);
  std::string path = slash == std::string::npos ? "/" : config_.url.substr(slash);

  httplib::Client client(origin);
  auto secs = static_cast<time_t>(config_.timeout_seconds);
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  auto res = client.Post(path, headers, DumpJson(RequestBody(request.prompt)), "application/json");
  if (!res) throw PolicyTransportError("policy request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw PolicyTransportError("policy returned status " + std::to_string(res->status));
  }
  auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded() || !j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty()) {
    throw PolicyTransportError("policy response has no choices");
  }
  const auto& content = j["choices"][0]["message"]["content"];
  if (content.is_string()) return content.get<std::string>();
  if (content.is_array()) {
    std::string out;
    for (const auto& part : content) {
      if (part.value("type", "") == "text") out += part.value("text", "");
    }
    return out;
  }
  throw PolicyTransportError("policy response content is not text");
}

}  // namespace deskbench
