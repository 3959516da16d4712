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

#ifndef TABATTACK_TOOLS_CLI_COMMANDS_H_
#define TABATTACK_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace tabattack::cli {

// Runs one `tabattack` invocation. `args` excludes the program name. Returns
// the process exit code (see ExitCode).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// The argument vector as recorded in a manifest: everything except --out.
std::vector<std::string> ManifestArgs(const std::vector<std::string>& args);

}  // namespace tabattack::cli

#endif  // TABATTACK_TOOLS_CLI_COMMANDS_H_
