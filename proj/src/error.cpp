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
#include "qtransfer/error.hpp"

namespace qtransfer {

const char *to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::OutOfRange:
        return "out-of-range";
    case ErrorCode::InvalidSize:
        return "invalid-size";
    case ErrorCode::SizeLimit:
        return "size-limit";
    case ErrorCode::InvalidPair:
        return "invalid-pair";
    case ErrorCode::InvalidArgument:
        return "invalid-argument";
    case ErrorCode::ShapeMismatch:
        return "shape-mismatch";
    case ErrorCode::Parse:
        return "parse";
    case ErrorCode::NonCommutingPart:
        return "non-commuting-part";
    case ErrorCode::UnsupportedAnsatz:
        return "unsupported-ansatz";
    case ErrorCode::EmptyPool:
        return "empty-pool";
    case ErrorCode::Config:
        return "config";
    case ErrorCode::Io:
        return "io";
    case ErrorCode::InternalConsistency:
        return "internal-consistency";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

void fail(ErrorCode code, const std::string &message) { throw Error(code, message); }

} // namespace qtransfer
