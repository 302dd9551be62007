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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deskbench/model.h"

namespace deskbench {

struct ContentPart {
  enum class Kind { kText, kImage };
  Kind kind = Kind::kText;
  std::string text;
  Bytes image_png;
};

struct ChatMessage {
  std::string role;  // system, user, assistant
  std::vector<ContentPart> parts;

  static ChatMessage Text(std::string role, std::string text);
  // Concatenated text parts.
  std::string JoinedText() const;
};

using Prompt = std::vector<ChatMessage>;

enum class PolicyRole { kActor, kPlanner, kGrounder };
const char* ToString(PolicyRole r);

struct PolicyRequest {
  const Task& task;
  PolicyRole role;
  int step;
  const Prompt& prompt;
};

class PolicyTransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maps a prompt to raw model text. One instance serves one episode at a time.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void BeginEpisode(const Task& task, std::uint64_t seed);
  // Throws PolicyTransportError when no reply could be obtained.
  virtual std::string Act(const PolicyRequest& request) = 0;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

// Replays fixed replies per task and role. Reply documents:
//   {"default": [..], "tasks": {"<id>": [..] | {"actor"|"planner"|"grounder": [..]}}}
// The n-th call for a role returns the n-th reply; the last one repeats.
class ScriptedPolicy : public Policy {
 public:
  using Replies = std::map<std::string, std::vector<std::string>>;

  explicit ScriptedPolicy(nlohmann::json script);
  // Throws std::runtime_error naming the file on read or schema errors.
  static nlohmann::json LoadScript(const std::string& path);

  void BeginEpisode(const Task& task, std::uint64_t seed) override;
  std::string Act(const PolicyRequest& request) override;

 private:
  std::map<std::string, Replies> tasks_;
  std::vector<std::string> default_;
  std::map<PolicyRole, size_t> calls_;
};

struct RemotePolicyConfig {
  std::string url;  // full chat-completions URL
  std::string model;
  double temperature = 0.5;
  double top_p = 0.9;
  int max_tokens = 1500;
  double timeout_seconds = 120;
  // Bearer token; read from DESKBENCH_API_KEY when empty.
  std::string api_key;
};

// Chat-completion HTTP endpoint. Screenshots travel as inline base64 parts.
class RemotePolicy : public Policy {
 public:
  explicit RemotePolicy(RemotePolicyConfig config);
  std::string Act(const PolicyRequest& request) override;

  // The request document sent for `prompt`.
  nlohmann::json RequestBody(const Prompt& prompt) const;

 private:
  RemotePolicyConfig config_;
};

}  // namespace deskbench
