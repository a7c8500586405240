// Copyright 2026 The chordlab authors
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

#ifndef CHORDLAB_ERROR_HPP
#define CHORDLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace chordlab {

/// Bad files, unparseable content, invalid configuration. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failures while processing otherwise well-formed inputs (misaligned
/// annotations, model/preset mismatch, non-finite objective). Exit code 1.
class RunError : public std::runtime_error {
 public:
  explicit RunError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace chordlab

#endif  // CHORDLAB_ERROR_HPP
