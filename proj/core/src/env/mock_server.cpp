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

#include "deskbench/env/mock_server.h"

#include <httplib.h>

#include <stdexcept>

namespace deskbench {

namespace {

void JsonReply(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(DumpJson(body), "application/json");
}

void ErrorReply(httplib::Response& res, int status, const std::string& message) {
  JsonReply(res, {{"error", message}}, status);
}

}  // namespace

struct MockServer::Impl {
  std::mutex mu;
  std::unique_ptr<MockApp> app;
  httplib::Server server;

  // Runs `fn` under the instance lock, mapping failures to error replies.
  template <typename Fn>
  void Guard(httplib::Response& res, Fn fn) {
    std::lock_guard lock(mu);
    try {
      fn();
    } catch (const EnvError& e) {
      ErrorReply(res, e.status() == 0 ? 500 : e.status(), e.what());
    } catch (const nlohmann::json::exception& e) {
      ErrorReply(res, 400, std::string("malformed body: ") + e.what());
    } catch (const std::invalid_argument& e) {
      ErrorReply(res, 400, e.what());
    } catch (const std::exception& e) {
      ErrorReply(res, 500, e.what());
    }
  }

  void Routes() {
    server.Get("/state", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        if (req.has_param("query")) {
          JsonReply(res, app->Query(req.get_param_value("query")));
        } else {
          JsonReply(res, app->Dump());
        }
      });
    });
    server.Post("/setup", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        auto body = nlohmann::json::parse(req.body);
        std::vector<SetupStep> steps;
        const auto& raw = body.at("steps");
        for (size_t i = 0; i < raw.size(); ++i) {
          try {
            steps.push_back(SetupStepFromJson(raw[i]));
          } catch (const std::exception& e) {
            throw EnvError(422, "setup step " + std::to_string(i) + ": " + e.what());
          }
        }
        if (body.value("reset", false)) app->Reset(body.value("seed", std::uint64_t{0}));
        app->Setup(steps);
        JsonReply(res, {{"ok", true}});
      });
    });
    server.Post("/action", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        Action a = ActionFromWire(nlohmann::json::parse(req.body));
        JsonReply(res, ToJson(app->Exec(a)));
      });
    });
    server.Post("/command", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        auto body = nlohmann::json::parse(req.body);
        std::string out = app->Command(body.at("cmd").get<std::string>(),
                                       body.value("kwargs", nlohmann::json::object()));
        JsonReply(res, {{"output", out}});
      });
    });
    server.Get("/screenshot", [this](const httplib::Request&, httplib::Response& res) {
      Guard(res, [&] {
        Bytes png = app->Screenshot();
        res.set_content(std::string(png.begin(), png.end()), "image/png");
      });
    });
    server.Get("/a11y", [this](const httplib::Request&, httplib::Response& res) {
      Guard(res, [&] { JsonReply(res, ToJson(app->A11y())); });
    });
    server.Get("/file", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        if (!req.has_param("path")) throw std::invalid_argument("missing 'path'");
        Bytes b = app->File(req.get_param_value("path"));
        res.set_content(std::string(b.begin(), b.end()), "application/octet-stream");
      });
    });
  }
};

MockServer::MockServer(std::unique_ptr<MockApp> app, std::string host, int port)
    : impl_(std::make_unique<Impl>()), host_(std::move(host)) {
  impl_->app = std::move(app);
  impl_->app->Reset(0);
  impl_->Routes();
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host_);
  } else {
    port_ = impl_->server.bind_to_port(host_, port) ? port : -1;
  }
  if (port_ < 0) throw std::runtime_error("cannot bind " + host_ + ":" + std::to_string(port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockServer::~MockServer() { Stop(); }

std::string MockServer::url() const { return "http://" + host_ + ":" + std::to_string(port_); }

void MockServer::Wait() {
  if (thread_.joinable()) thread_.join();
}

void MockServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

LocalEnvironment::LocalEnvironment(std::unique_ptr<MockApp> app) : app_(std::move(app)) {
  app_->Reset(0);
}

Value LocalEnvironment::GetState(const std::optional<std::string>& query) {
  std::lock_guard lock(mu_);
  return FromJson(query ? app_->Query(*query) : app_->Dump());
}

void LocalEnvironment::PostSetup(const std::vector<SetupStep>& steps,
                                 std::optional<std::uint64_t> reset_seed) {
  std::lock_guard lock(mu_);
  for (size_t i = 0; i < steps.size(); ++i) {
    if (auto err = ValidateSetupStep(steps[i])) {
      throw EnvError(422, "setup step " + std::to_string(i) + ": " + *err);
    }
  }
  if (reset_seed) app_->Reset(*reset_seed);
  app_->Setup(steps);
}

ExecResult LocalEnvironment::ExecAction(const Action& action) {
  std::lock_guard lock(mu_);
  return app_->Exec(action);
}

std::string LocalEnvironment::RunCommand(const std::string& cmd, const Value& kwargs) {
  std::lock_guard lock(mu_);
  return app_->Command(cmd, ToJson(kwargs));
}

Bytes LocalEnvironment::GetScreenshot() {
  std::lock_guard lock(mu_);
  return app_->Screenshot();
}

A11yNode LocalEnvironment::GetA11y() {
  std::lock_guard lock(mu_);
  return app_->A11y();
}

Bytes LocalEnvironment::FetchFile(const std::string& path) {
  std::lock_guard lock(mu_);
  return app_->File(path);
}

}  // namespace deskbench
