// Copyright 2026 The tactloc Authors.
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

#ifndef TACTLOC_ERRORS_H_
#define TACTLOC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tactloc {

// Bad user input: configuration values, command-line usage, malformed files.
// The command-line tool maps this family to exit status 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A file whose bytes do not follow the expected format.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Filesystem failures (missing, unreadable or unwritable paths).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tactloc

#endif  // TACTLOC_ERRORS_H_
