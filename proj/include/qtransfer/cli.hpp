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
/**
 * @file
 * The qtransfer command line: base, run, scan, exact and fidelity.
 *
 * Every file written embeds a RunManifest (command line, config snapshot,
 * master seed, code version, task, init string, boundary, timestamps). The
 * output directory is --out, else $QTRANSFER_OUT, else ./results.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace qtransfer {

/// Version string embedded in every manifest.
const char *code_version() noexcept;

/// ISO 8601 UTC time, second resolution.
std::string utc_timestamp();

/// Output directory from an explicit flag, $QTRANSFER_OUT or "results".
std::filesystem::path output_directory(const std::string &flag);

/// Runs one command. `args` excludes the program name. Returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qtransfer
