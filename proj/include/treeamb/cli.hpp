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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treeamb {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // a yes/no query answered no
inline constexpr int kExitInput = 2;     // bad arguments, files or contracts
inline constexpr int kExitInternal = 3;

// Runs the command line args (without the program name), writing results
// to out and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace treeamb
