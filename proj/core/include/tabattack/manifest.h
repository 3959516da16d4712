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

#ifndef TABATTACK_MANIFEST_H_
#define TABATTACK_MANIFEST_H_

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace tabattack {

struct InputDigest {
  std::string role;  // e.g. "corpus", "embeddings"
  std::string path;
  std::string sha256;
};

// Everything needed to re-run a command: the argument vector, the resolved
// configuration and digests of every input taken before execution.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // argv after the program name
  nlohmann::json config;
  std::vector<InputDigest> inputs;
  uint64_t seed = 0;
  std::string tool_version;
  // UTC, ISO 8601. Taken from SOURCE_DATE_EPOCH when set.
  std::string timestamp;
};

std::string Sha256File(const std::filesystem::path& path);
std::string CurrentTimestamp();

nlohmann::json ManifestToJson(const RunManifest& manifest);
RunManifest ManifestFromJson(const nlohmann::json& j);

void WriteManifest(const RunManifest& manifest,
                   const std::filesystem::path& path);
RunManifest ReadManifest(const std::filesystem::path& path);

// Inputs whose current digest differs from the recorded one.
std::vector<InputDigest> ChangedInputs(const RunManifest& manifest);

}  // namespace tabattack

#endif  // TABATTACK_MANIFEST_H_
