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

#include "deskbench/env/client.h"

#include <httplib.h>

#include <stdexcept>

namespace deskbench {

struct EnvClient::Impl {
  explicit Impl(const EnvEndpoint& ep) : client(ep.base_url) {
    auto secs = static_cast<time_t>(ep.timeout_seconds);
    auto usecs = static_cast<time_t>((ep.timeout_seconds - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    client.set_keep_alive(true);
  }

  // Checks transport and status; returns the body.
  std::string Take(const httplib::Result& res, const std::string& what) {
    if (!res) {
      httplib::Error err = res.error();
      if (err == httplib::Error::Connection ||
          err == httplib::Error::ConnectionTimeout) {
        throw EnvError(0, "connect timeout: " + what);
      }
      throw EnvError(0, what + ": " + httplib::to_string(err));
    }
    if (res->status < 200 || res->status >= 300) {
      std::string msg = res->body;
      auto j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_object() && j.contains("error") && j["error"].is_string()) {
        msg = j["error"].get<std::string>();
      }
      throw EnvError(res->status, msg);
    }
    return res->body;
  }

  nlohmann::json Json(const httplib::Result& res, const std::string& what) {
    std::string body = Take(res, what);
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) throw EnvError(0, what + ": malformed response body");
    return j;
  }

  nlohmann::json Post(const std::string& path, const nlohmann::json& body) {
    return Json(client.Post(path, DumpJson(body), "application/json"), "POST " + path);
  }

  httplib::Client client;
};

EnvClient::EnvClient(EnvEndpoint endpoint)
    : endpoint_(std::move(endpoint)), impl_(std::make_unique<Impl>(endpoint_)) {}

EnvClient::~EnvClient() = default;

Value EnvClient::GetState(const std::optional<std::string>& query) {
  std::lock_guard lock(mu_);
  httplib::Params params;
  if (query) params.emplace("query", *query);
  return FromJson(impl_->Json(impl_->client.Get("/state", params, {}), "GET /state"));
}

void EnvClient::PostSetup(const std::vector<SetupStep>& steps,
                          std::optional<std::uint64_t> reset_seed) {
  std::lock_guard lock(mu_);
  impl_->Post("/setup", SetupBody(steps, reset_seed));
}

ExecResult EnvClient::ExecAction(const Action& action) {
  std::lock_guard lock(mu_);
  return ExecResultFromJson(impl_->Post("/action", ActionToWire(action)));
}

std::string EnvClient::RunCommand(const std::string& cmd, const Value& kwargs) {
  std::lock_guard lock(mu_);
  nlohmann::json r = impl_->Post("/command", {{"cmd", cmd}, {"kwargs", ToJson(kwargs)}});
  return r.value("output", "");
}

Bytes EnvClient::GetScreenshot() {
  std::lock_guard lock(mu_);
  std::string body = impl_->Take(impl_->client.Get("/screenshot"), "GET /screenshot");
  return Bytes(body.begin(), body.end());
}

A11yNode EnvClient::GetA11y() {
  std::lock_guard lock(mu_);
  nlohmann::json j = impl_->Json(impl_->client.Get("/a11y"), "GET /a11y");
  try {
    return A11yNodeFromJson(j);
  } catch (const std::exception& e) {
    throw EnvError(0, std::string("GET /a11y: ") + e.what());
  }
}

Bytes EnvClient::FetchFile(const std::string& path) {
  std::lock_guard lock(mu_);
  httplib::Params params{{"path", path}};
  std::string body = impl_->Take(impl_->client.Get("/file", params, {}), "GET /file");
  return Bytes(body.begin(), body.end());
}

}  // namespace deskbench
