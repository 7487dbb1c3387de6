// Copyright 2026 The Authors.
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

#ifndef WFALLOC_ERRORS_HPP_
#define WFALLOC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace wfalloc {

// Bad arguments and broken preconditions surface as std::invalid_argument.
// The types below carry the failure classes that callers map to distinct
// exit codes.

// An exhaustive enumeration was requested on an instance above its cap.
class InstanceTooLarge : public std::length_error {
 public:
  explicit InstanceTooLarge(const std::string& what) : std::length_error(what) {}
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A file was readable but its contents do not match the expected schema.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wfalloc

#endif  // WFALLOC_ERRORS_HPP_
