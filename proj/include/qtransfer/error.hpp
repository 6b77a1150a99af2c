// Copyright 2026 The qtransfer Authors.
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

namespace qtransfer {

enum class ErrorCode {
    OutOfRange,
    InvalidSize,
    SizeLimit,
    InvalidPair,
    InvalidArgument,
    ShapeMismatch,
    Parse,
    NonCommutingPart,
    UnsupportedAnsatz,
    EmptyPool,
    Config,
    Io,
    InternalConsistency,
};

const char *to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    /// The message without the code prefix.
    [[nodiscard]] const std::string &message() const noexcept { return message_; }

  private:
    ErrorCode code_;
    std::string message_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

inline void require(bool condition, ErrorCode code, const std::string &message) {
    if (!condition) {
        fail(code, message);
    }
}

} // namespace qtransfer
