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

#ifndef TABATTACK_ERRORS_H_
#define TABATTACK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tabattack {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable input files and schema violations in corpora, embedding files,
// model files and manifests.
class InputError : public Error {
 public:
  using Error::Error;
};

// Failure talking to a remote victim. The message always names the endpoint.
class TransportError : public Error {
 public:
  TransportError(std::string endpoint, const std::string& what)
      : Error(endpoint + ": " + what), endpoint_(std::move(endpoint)) {}

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

// The remote victim answered, but the answer violates the wire protocol.
class ProtocolError : public TransportError {
 public:
  using TransportError::TransportError;
};

// A class was requested that the victim (or a KB) does not know.
class UnknownClassError : public Error {
 public:
  explicit UnknownClassError(const std::string& cls)
      : Error("unknown class '" + cls + "'"), cls_(cls) {}

  const std::string& cls() const { return cls_; }

 private:
  std::string cls_;
};

// No adversarial candidates remain for a class (e.g. every test entity of the
// class also appears in training).
class EmptyPoolError : public Error {
 public:
  explicit EmptyPoolError(const std::string& cls)
      : Error("no candidates left for class '" + cls + "'"), cls_(cls) {}

  const std::string& cls() const { return cls_; }

 private:
  std::string cls_;
};

}  // namespace tabattack

#endif  // TABATTACK_ERRORS_H_
