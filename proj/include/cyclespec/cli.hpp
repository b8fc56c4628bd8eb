// Copyright 2026 The cyclespec Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace cyclespec {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kInputError = 2, kVerifyFailed = 3, kResourceCap = 4 };

/// Columns of the bench CSV, in order.
inline const std::vector<std::string> kBenchColumns{
    "family", "n", "seed", "spectrum", "wall_ms", "ell", "heavy", "good", "I", "lemma_blocks"};

/// Runs one command; `args` excludes the program name. Errors end with a
/// single `error <code> <kind>: <message>` line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclespec
