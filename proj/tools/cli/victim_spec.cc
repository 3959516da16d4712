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

#include "victim_spec.h"

#include <map>
#include <mutex>
#include <utility>

#include "errors.h"
#include "tabattack/prototype_victim.h"
#include "tabattack/remote_victim.h"

namespace tabattack::cli {
namespace {

// Applies a threshold override on top of another victim.
class ThresholdOverride : public Victim {
 public:
  ThresholdOverride(std::shared_ptr<const Victim> inner, double threshold)
      : inner_(std::move(inner)), threshold_(threshold) {}

  LogitVector PredictLogits(
      const Table& table, int col,
      std::span<const std::string> classes) const override {
    return inner_->PredictLogits(table, col, classes);
  }
  const std::vector<std::string>& vocabulary() const override {
    return inner_->vocabulary();
  }
  double threshold() const override { return threshold_; }

 private:
  std::shared_ptr<const Victim> inner_;
  double threshold_;
};

OpenedVictim OpenPrototype(const std::string& path,
                           const VictimOpenOptions& options) {
  auto victim =
      std::make_shared<const PrototypeVictim>(LoadPrototypeModel(path));
  OpenedVictim out;
  out.inputs.push_back({"victim_model", path, Sha256File(path)});
  const auto emb = PrototypeModelEmbeddings(path);
  out.inputs.push_back(
      {"victim_embeddings", emb.generic_string(), Sha256File(emb)});
  out.description = {{"kind", "prototype"},
                     {"model", path},
                     {"header_weight", victim->options().header_weight},
                     {"threshold", victim->threshold()}};
  if (options.threshold) {
    out.victim =
        std::make_shared<ThresholdOverride>(victim, *options.threshold);
    out.description["threshold"] = *options.threshold;
  } else {
    out.victim = victim;
  }
  return out;
}

OpenedVictim OpenHttp(const std::string& url,
                      const VictimOpenOptions& options) {
  RemoteVictimOptions remote;
  remote.read_timeout = options.timeout;
  remote.threshold = options.threshold;
  auto victim = std::make_shared<const RemoteVictim>(url, remote);
  OpenedVictim out;
  out.description = {
      {"kind", "http"}, {"endpoint", url}, {"threshold", victim->threshold()}};
  out.victim = std::move(victim);
  return out;
}

struct Registry {
  std::mutex mu;
  std::map<std::string, VictimFactory> kinds{{"prototype", OpenPrototype},
                                             {"http", OpenHttp}};
};

Registry& GetRegistry() {
  static Registry* registry = new Registry;
  return *registry;
}

}  // namespace

void RegisterVictimKind(const std::string& kind, VictimFactory factory) {
  Registry& r = GetRegistry();
  std::lock_guard lock(r.mu);
  r.kinds[kind] = std::move(factory);
}

std::vector<std::string> VictimKinds() {
  Registry& r = GetRegistry();
  std::lock_guard lock(r.mu);
  std::vector<std::string> out;
  for (const auto& [kind, factory] : r.kinds) out.push_back(kind);
  return out;
}

OpenedVictim OpenVictim(const std::string& spec,
                        const VictimOpenOptions& options) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw UsageError("victim spec must look like <kind>:<argument>, got '" +
                     spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  VictimFactory factory;
  {
    Registry& r = GetRegistry();
    std::lock_guard lock(r.mu);
    auto it = r.kinds.find(kind);
    if (it == r.kinds.end()) {
      throw UsageError("unknown victim kind '" + kind + "'");
    }
    factory = it->second;
  }
  return factory(spec.substr(colon + 1), options);
}

}  // namespace tabattack::cli
