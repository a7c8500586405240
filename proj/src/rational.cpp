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

#include "chordlab/rational.hpp"

#include <cstdlib>

namespace chordlab {

namespace {

bool parse_int(const std::string& s, std::int64_t* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  std::int64_t n = 0;
  std::int64_t d = 1;
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!parse_int(text, &n))
      throw InputError("bad rational literal: '" + text + "'");
    return Rational(n);
  }
  if (!parse_int(text.substr(0, slash), &n) ||
      !parse_int(text.substr(slash + 1), &d) || d == 0)
    throw InputError("bad rational literal: '" + text + "'");
  return Rational(n, d);
}

}  // namespace chordlab
