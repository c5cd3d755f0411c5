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

#include <stdexcept>
#include <string>
#include <string_view>

namespace treeamb {

enum class ErrorCode {
  AlphabetMismatch,
  AntichainViolation,
  UnknownState,
  SortMismatch,
  MalformedArena,
  IncompleteStrategy,
  NotMember,
  IsMember,
  InconsistentRun,
  StateMismatch,
  PreconditionViolated,
  AmbiguousRepresentation,
  InvalidArgument,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception; the code lets
// callers (and the CLI) distinguish input errors from contract violations.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the text-format readers; carries the file and line for messages.
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, const std::string& message)
      : Error(ErrorCode::ParseError,
              file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }

 private:
  std::string file_;
  int line_;
};

}  // namespace treeamb
