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

#pragma once

#include <string_view>

namespace cw {

enum class EcForm {
  kFull,     // 1.1.1.1, 1.14.11.n5
  kPartial,  // classification header: 1.1.-.-, -.-.-.-
  kInvalid,
};

/// Classifies an EC number. Components are positive integers without
/// leading zeros; the serial component may carry an "n" prefix
/// (preliminary numbers). A partial code replaces a suffix of the
/// components by "-".
EcForm classify_ec(std::string_view text);

/// True for full EC numbers only.
inline bool validate_ec(std::string_view text) { return classify_ec(text) == EcForm::kFull; }

}  // namespace cw
