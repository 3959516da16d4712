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

#ifndef TABATTACK_TOOLS_CLI_ERRORS_H_
#define TABATTACK_TOOLS_CLI_ERRORS_H_

#include <string>

#include "tabattack/errors.h"

namespace tabattack::cli {

// Bad flags or flag combinations; exit code 1.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitTransport = 3,
};

}  // namespace tabattack::cli

#endif  // TABATTACK_TOOLS_CLI_ERRORS_H_
