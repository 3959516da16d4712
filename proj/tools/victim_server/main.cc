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

// Serves a prototype model over the HTTP victim protocol until SIGINT or
// SIGTERM.

#include <pthread.h>

#include <CLI11.hpp>
#include <csignal>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "tabattack/errors.h"
#include "tabattack/prototype_victim.h"
#include "tabattack/remote_victim.h"
#include "tabattack/version.h"

int main(int argc, char** argv) {
  CLI::App app{"Serve a prototype victim over HTTP", "tabattack-victim-server"};
  app.set_version_flag("--version", TABATTACK_VERSION);
  std::string model;
  std::string host = "127.0.0.1";
  int port = 8080;
  app.add_option("--model", model, "victim.json from build-victim")->required();
  app.add_option("--host", host);
  app.add_option("--port", port, "0 picks a free port")
      ->check(CLI::Range(0, 65535));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  // Block the stop signals before any thread starts so that only sigwait
  // sees them.
  sigset_t stop;
  sigemptyset(&stop);
  sigaddset(&stop, SIGINT);
  sigaddset(&stop, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop, nullptr);

  try {
    auto victim = std::make_shared<const tabattack::PrototypeVictim>(
        tabattack::LoadPrototypeModel(model));
    tabattack::VictimServer server(victim);
    server.Start(host, port);
    std::cout << "serving " << victim->vocabulary().size() << " classes on "
              << server.endpoint() << std::endl;
    int sig = 0;
    sigwait(&stop, &sig);
    server.Stop();
  } catch (const tabattack::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
