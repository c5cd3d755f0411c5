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
// The end-to-end acceptance checks, shared by the `suite` command and the
// acceptance test binary.

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace treeamb {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  // Returns the detail line; sets pass.
  std::function<std::string(bool& pass)> check;
};

const std::vector<Criterion>& acceptance_criteria();

// Runs one criterion, catching exceptions as failures and failing when
// the time budget is exceeded.
CriterionResult run_criterion(const Criterion& c);

// Runs all criteria (or only `only` when nonzero), printing one line each
// as it finishes. Returns true iff all ran criteria pass.
bool run_acceptance(std::ostream& out, int only = 0);

std::string format_result(const CriterionResult& r);

}  // namespace treeamb
