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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace cw::text {

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

/// Byte offset of the first ill-formed UTF-8 sequence, or nullopt if the
/// whole input is well-formed (overlongs and surrogates are ill-formed).
std::optional<std::size_t> first_invalid_utf8(std::string_view s);

inline bool is_valid_utf8(std::string_view s) { return !first_invalid_utf8(s).has_value(); }

/// Matching key for synonyms: NFC(casefold(NFC(s))). Input must be valid
/// UTF-8.
std::string fold(std::string_view s);

/// True if s contains a C0 control character or DEL.
bool has_control_chars(std::string_view s);

/// Lowercases a language tag; returns nullopt unless it has the shape
/// alpha{1,8}(-alnum{1,8})*.
std::optional<std::string> normalize_language_tag(std::string_view tag);

}  // namespace cw::text
