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

#include "treeamb/error.hpp"

namespace treeamb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::AntichainViolation: return "AntichainViolation";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::MalformedArena: return "MalformedArena";
    case ErrorCode::IncompleteStrategy: return "IncompleteStrategy";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::IsMember: return "IsMember";
    case ErrorCode::InconsistentRun: return "InconsistentRun";
    case ErrorCode::StateMismatch: return "StateMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::AmbiguousRepresentation: return "AmbiguousRepresentation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace treeamb
