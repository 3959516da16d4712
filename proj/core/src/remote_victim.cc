// Copyright 2026 The TabAttack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabattack/remote_victim.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "httplib.h"
#include "tabattack/corpus_io.h"
#include "tabattack/errors.h"

namespace tabattack {
namespace {

constexpr char kJson[] = "application/json";

}  // namespace

nlohmann::json MakePredictRequest(const Table& table, int col,
                                  std::span<const std::string> classes) {
  return nlohmann::json{
      {"table", TableToJson(table)},
      {"column_index", col},
      {"classes", std::vector<std::string>(classes.begin(), classes.end())}};
}

RemoteVictim::RemoteVictim(std::string endpoint, RemoteVictimOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {
  const nlohmann::json reply = Post("/classes", nlohmann::json::object());
  try {
    vocabulary_ = reply.at("classes").get<std::vector<std::string>>();
    threshold_ = options_.threshold.value_or(reply.value("threshold", 0.5));
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(endpoint_,
                        std::string("bad /classes reply: ") + e.what());
  }
  if (vocabulary_.empty()) {
    throw ProtocolError(endpoint_, "victim advertises no classes");
  }
}

nlohmann::json RemoteVictim::Post(const std::string& path,
                                  const nlohmann::json& body) const {
  httplib::Client client(endpoint_);
  if (!client.is_valid()) {
    throw TransportError(endpoint_, "invalid endpoint");
  }
  client.set_connection_timeout(options_.connect_timeout);
  client.set_read_timeout(options_.read_timeout);
  client.set_write_timeout(options_.read_timeout);
  auto res = client.Post(path, body.dump(), kJson);
  if (!res) {
    throw TransportError(endpoint_, "POST " + path + " failed: " +
                                        httplib::to_string(res.error()));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception&) {
    if (res->status / 100 != 2) {
      throw TransportError(endpoint_, "POST " + path + " returned status " +
                                          std::to_string(res->status));
    }
    throw ProtocolError(endpoint_, "POST " + path + " returned invalid JSON");
  }
  if (res->status / 100 != 2) {
    if (res->status == 422 && reply.value("kind", "") == "unknown_class") {
      throw UnknownClassError(reply.value("class", ""));
    }
    throw TransportError(endpoint_, "POST " + path + " returned status " +
                                        std::to_string(res->status) + ": " +
                                        reply.value("error", ""));
  }
  return reply;
}

LogitVector RemoteVictim::PredictLogits(
    const Table& table, int col, std::span<const std::string> classes) const {
  const nlohmann::json reply =
      Post("/predict", MakePredictRequest(table, col, classes));
  LogitVector out;
  try {
    out.classes = reply.at("classes").get<std::vector<std::string>>();
    out.scores = reply.at("logits").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(endpoint_,
                        std::string("bad /predict reply: ") + e.what());
  }
  if (out.scores.size() != classes.size()) {
    throw ProtocolError(
        endpoint_, "expected " + std::to_string(classes.size()) +
                       " logits, got " + std::to_string(out.scores.size()));
  }
  if (!std::equal(out.classes.begin(), out.classes.end(), classes.begin(),
                  classes.end())) {
    throw ProtocolError(endpoint_, "reply classes do not echo the request");
  }
  for (double s : out.scores) {
    if (!std::isfinite(s)) throw ProtocolError(endpoint_, "non-finite logit");
  }
  return out;
}

struct VictimServer::Impl {
  std::shared_ptr<const Victim> victim;
  httplib::Server server;
  std::thread thread;
  std::string host;
  int port = 0;
};

VictimServer::VictimServer(std::shared_ptr<const Victim> victim)
    : impl_(std::make_unique<Impl>()) {
  impl_->victim = std::move(victim);
  auto error = [](httplib::Response& res, int status, nlohmann::json body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
  };
  impl_->server.Post("/predict", [this, error](const httplib::Request& req,
                                               httplib::Response& res) {
    const Victim& victim = *impl_->victim;
    LogitVector logits;
    try {
      const auto body = nlohmann::json::parse(req.body);
      const Table table = TableFromJson(body.at("table"));
      const int col = body.at("column_index").get<int>();
      const auto classes = body.at("classes").get<std::vector<std::string>>();
      logits = victim.PredictLogits(table, col, classes);
    } catch (const UnknownClassError& e) {
      error(
          res, 422,
          {{"error", e.what()}, {"kind", "unknown_class"}, {"class", e.cls()}});
      return;
    } catch (const std::exception& e) {
      error(res, 400, {{"error", e.what()}});
      return;
    }
    res.set_content(
        nlohmann::json{{"classes", logits.classes}, {"logits", logits.scores}}
            .dump(),
        kJson);
  });
  impl_->server.Post("/classes", [this](const httplib::Request&,
                                        httplib::Response& res) {
    res.set_content(nlohmann::json{{"classes", impl_->victim->vocabulary()},
                                   {"threshold", impl_->victim->threshold()}}
                        .dump(),
                    kJson);
  });
}

VictimServer::~VictimServer() { Stop(); }

int VictimServer::Start(const std::string& host, int port) {
  impl_->host = host;
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    impl_->port = port;
  } else {
    impl_->port = -1;
  }
  if (impl_->port <= 0) {
    throw TransportError("http://" + host + ":" + std::to_string(port),
                         "cannot bind");
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void VictimServer::Serve(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port;
  if (!impl_->server.listen(host, port)) {
    throw TransportError(endpoint(), "cannot listen");
  }
}

void VictimServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string VictimServer::endpoint() const {
  return "http://" + impl_->host + ":" + std::to_string(impl_->port);
}

}  // namespace tabattack
