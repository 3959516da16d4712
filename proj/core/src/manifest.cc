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

#include "tabattack/manifest.h"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <memory>

#include "tabattack/errors.h"

namespace tabattack {

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in.read(buf.data(), buf.size()) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf.data(), in.gcount());
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

std::string CurrentTimestamp() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json ManifestToJson(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const InputDigest& d : m.inputs) {
    inputs.push_back(
        {{"role", d.role}, {"path", d.path}, {"sha256", d.sha256}});
  }
  return nlohmann::json{
      {"command", m.command},    {"args", m.args},
      {"config", m.config},      {"inputs", std::move(inputs)},
      {"seed", m.seed},          {"tool_version", m.tool_version},
      {"timestamp", m.timestamp}};
}

RunManifest ManifestFromJson(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.args = j.at("args").get<std::vector<std::string>>();
  m.config = j.value("config", nlohmann::json::object());
  for (const auto& d : j.at("inputs")) {
    m.inputs.push_back(InputDigest{d.at("role").get<std::string>(),
                                   d.at("path").get<std::string>(),
                                   d.at("sha256").get<std::string>()});
  }
  m.seed = j.value("seed", uint64_t{0});
  m.tool_version = j.value("tool_version", "");
  m.timestamp = j.value("timestamp", "");
  return m;
}

void WriteManifest(const RunManifest& manifest,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest " + path.string());
  out << ManifestToJson(manifest).dump(2) << '\n';
}

RunManifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  try {
    return ManifestFromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<InputDigest> ChangedInputs(const RunManifest& manifest) {
  std::vector<InputDigest> changed;
  for (const InputDigest& d : manifest.inputs) {
    std::error_code ec;
    if (!std::filesystem::exists(d.path, ec) ||
        Sha256File(d.path) != d.sha256) {
      changed.push_back(d);
    }
  }
  return changed;
}

}  // namespace tabattack
