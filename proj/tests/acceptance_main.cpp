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
//
// Runs every acceptance criterion, one PASS/FAIL line each. An optional
// argument selects a single criterion by number.

#include <cstdlib>
#include <iostream>
#include <string>

#include "treeamb/acceptance.hpp"

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  return treeamb::run_acceptance(std::cout, only) ? 0 : 1;
}
