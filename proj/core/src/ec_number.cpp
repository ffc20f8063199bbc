/*
 * Copyright 2026 The ConceptWiki Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cw/ec_number.hpp"

#include <array>
#include <cstddef>

namespace cw {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_positive_integer(std::string_view s) {
  if (s.empty() || s.front() == '0') return false;
  for (char c : s) {
    if (!is_digit(c)) return false;
  }
  return true;
}

}  // namespace

EcForm classify_ec(std::string_view text) {
  std::array<std::string_view, 4> parts;
  std::size_t count = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '.') {
      if (count == parts.size()) return EcForm::kInvalid;
      parts[count++] = text.substr(start, i - start);
      start = i + 1;
    }
  }
  if (count != parts.size()) return EcForm::kInvalid;

  // Once a "-" appears every later component must be "-" too.
  std::size_t specified = 0;
  while (specified < parts.size() && parts[specified] != "-") ++specified;
  for (std::size_t i = specified; i < parts.size(); ++i) {
    if (parts[i] != "-") return EcForm::kInvalid;
  }

  for (std::size_t i = 0; i < specified; ++i) {
    std::string_view p = parts[i];
    if (i == 3 && !p.empty() && p.front() == 'n') p.remove_prefix(1);
    if (!is_positive_integer(p)) return EcForm::kInvalid;
  }
  return specified == parts.size() ? EcForm::kFull : EcForm::kPartial;
}

}  // namespace cw
