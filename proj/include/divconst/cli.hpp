// Copyright 2026 The divconst Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace divconst::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,  // bad flags or invalid arguments
  kVerifyMismatch = 2,
  kBenchChecksum = 3,
};

/// Parses a decimal or 0x-prefixed hexadecimal unsigned integer.
std::uint64_t parse_uint(const std::string& text);

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace divconst::cli
