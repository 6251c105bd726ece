// Copyright 2026 The semsec Authors
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

#ifndef SEMSEC_ERRORS_HPP_
#define SEMSEC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace semsec {

// Argument violations use std::invalid_argument directly. The two types
// below cover failures that are not the caller's fault.

/// An iterative procedure hit its iteration or bracket-expansion limit.
class NoConvergenceError : public std::runtime_error {
 public:
  explicit NoConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A configuration file failed to parse or validate. The message names the
/// offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semsec

#endif  // SEMSEC_ERRORS_HPP_
