// Copyright 2026 The linc Authors
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

#ifndef LINC_CLI_HPP
#define LINC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace linc {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;     // parse or validation error
inline constexpr int kExitFuel = 2;      // normalization ran out of fuel
inline constexpr int kExitCheck = 3;     // a derivation failed to check

// Runs `linc <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linc

#endif  // LINC_CLI_HPP
