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

#ifndef TABATTACK_REMOTE_VICTIM_H_
#define TABATTACK_REMOTE_VICTIM_H_

#include <chrono>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tabattack/victim.h"

namespace tabattack {

// Wire protocol, all bodies JSON over HTTP:
//
//   POST /predict  {"table": <corpus record>, "column_index": j,
//                   "classes": [...]}
//               -> {"classes": [...echoed...], "logits": [...]}
//   POST /classes  {} -> {"classes": [...], "threshold": t}
//
// Errors are reported with a non-2xx status and {"error": message}; an
// unknown class uses status 422 and adds {"kind": "unknown_class",
// "class": name}.

nlohmann::json MakePredictRequest(const Table& table, int col,
                                  std::span<const std::string> classes);

struct RemoteVictimOptions {
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds read_timeout{30000};
  // Overrides the threshold advertised by the server.
  std::optional<double> threshold;
};

// Client side of the protocol. Every failure surfaces as a TransportError
// (ProtocolError for malformed answers) naming the endpoint; nothing is
// retried. Each call opens its own connection, so concurrent use is safe.
class RemoteVictim : public Victim {
 public:
  // `endpoint` is "http://host:port". Fetches the vocabulary eagerly, so an
  // unreachable endpoint fails here.
  explicit RemoteVictim(std::string endpoint, RemoteVictimOptions options = {});

  LogitVector PredictLogits(
      const Table& table, int col,
      std::span<const std::string> classes) const override;
  const std::vector<std::string>& vocabulary() const override {
    return vocabulary_;
  }
  double threshold() const override { return threshold_; }

  const std::string& endpoint() const { return endpoint_; }

 private:
  nlohmann::json Post(const std::string& path,
                      const nlohmann::json& body) const;

  std::string endpoint_;
  RemoteVictimOptions options_;
  std::vector<std::string> vocabulary_;
  double threshold_ = 0.5;
};

// Serves a Victim over the protocol on a background thread.
class VictimServer {
 public:
  explicit VictimServer(std::shared_ptr<const Victim> victim);
  ~VictimServer();

  VictimServer(const VictimServer&) = delete;
  VictimServer& operator=(const VictimServer&) = delete;

  // Binds and starts serving; port 0 picks a free port. Returns the port.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks serving on the calling thread until Stop() is called elsewhere.
  void Serve(const std::string& host, int port);
  void Stop();

  std::string endpoint() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tabattack

#endif  // TABATTACK_REMOTE_VICTIM_H_
