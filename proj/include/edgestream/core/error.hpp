// Copyright 2026 The edgestream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace edgestream {

/// Base class for every error raised by the library. `code()` is a stable
/// machine-readable tag (e.g. "MalformedRecord") used by tests and the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define EDGESTREAM_DEFINE_ERROR(Name)                                  \
  class Name : public ::edgestream::Error {                            \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

EDGESTREAM_DEFINE_ERROR(InvalidArgument);
EDGESTREAM_DEFINE_ERROR(ConfigError);
EDGESTREAM_DEFINE_ERROR(CyclicPipeline);
EDGESTREAM_DEFINE_ERROR(CorruptState);

}  // namespace edgestream
