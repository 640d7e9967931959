// Copyright 2026 The Hyperbit Lab Authors
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

#ifndef HYPERBIT_CLI_HPP
#define HYPERBIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperbit::cli {

/// Exit codes: 0 success, 1 verification failure, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;

/// Run one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The invariant suite behind `selftest`; one PASS/FAIL line per check.
int run_selftest(std::ostream& out);

}  // namespace hyperbit::cli

#endif  // HYPERBIT_CLI_HPP
