// Copyright 2026 The Persuasion Lab Authors
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

#ifndef PERSUASION_ERROR_HPP_
#define PERSUASION_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace persuasion {

enum class ErrorCode {
  kInvalidArgument,    // malformed input data or an invariant breach
  kDimensionMismatch,  // objects built over incompatible state/action/message sets
  kPrecondition,       // operation called outside its domain
  kLpFailure,          // the simplex kernel returned a non-optimal status
  kTheoremViolation,   // a constructive certificate failed to verify
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. `path` names the
// offending field when the error comes from parsed input ("prior_vertices[0]").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        code_(code),
        path_(std::move(path)) {}

  ErrorCode code() const { return code_; }
  const std::string& path() const { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace persuasion

#endif  // PERSUASION_ERROR_HPP_
