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

// Victim spec strings of the form "<kind>:<argument>", e.g.
// "prototype:model.json" or "http:http://127.0.0.1:8080".

#ifndef TABATTACK_TOOLS_CLI_VICTIM_SPEC_H_
#define TABATTACK_TOOLS_CLI_VICTIM_SPEC_H_

#include <chrono>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tabattack/manifest.h"
#include "tabattack/victim.h"

namespace tabattack::cli {

struct VictimOpenOptions {
  std::optional<double> threshold;  // overrides the victim's own
  std::chrono::milliseconds timeout{30000};
};

struct OpenedVictim {
  std::shared_ptr<const Victim> victim;
  std::vector<InputDigest> inputs;  // files the victim was loaded from
  nlohmann::json description;
};

using VictimFactory = std::function<OpenedVictim(
    const std::string& argument, const VictimOpenOptions& options)>;

// Later registrations of the same kind replace earlier ones.
void RegisterVictimKind(const std::string& kind, VictimFactory factory);
std::vector<std::string> VictimKinds();

// Throws UsageError for a malformed spec or an unregistered kind.
OpenedVictim OpenVictim(const std::string& spec,
                        const VictimOpenOptions& options = {});

}  // namespace tabattack::cli

#endif  // TABATTACK_TOOLS_CLI_VICTIM_SPEC_H_
