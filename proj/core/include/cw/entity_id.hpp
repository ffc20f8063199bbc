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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cw {

/// Opaque 128-bit identifier. Nothing in the system decodes meaning from the
/// bits; the only structure is the canonical text form
/// (lowercase 8-4-4-4-12 hex).
class EntityId {
 public:
  using Bytes = std::array<std::uint8_t, 16>;

  constexpr EntityId() = default;
  explicit constexpr EntityId(const Bytes& bytes) : bytes_(bytes) {}

  /// Version-4 identifier from a thread-local random engine.
  static EntityId random();

  /// Version-5 identifier, a pure function of (namespace_text, name).
  /// Throws std::invalid_argument if either argument is empty.
  static EntityId derived(std::string_view namespace_text, std::string_view name);

  /// Accepts the 36-character hyphenated form in either case; returns
  /// nullopt for anything else.
  static std::optional<EntityId> parse(std::string_view text);

  /// Like parse() but throws std::invalid_argument.
  static EntityId from_string(std::string_view text);

  [[nodiscard]] std::string str() const;
  [[nodiscard]] const Bytes& bytes() const { return bytes_; }
  [[nodiscard]] bool is_nil() const;
  [[nodiscard]] int version() const { return bytes_[6] >> 4; }

  friend constexpr auto operator<=>(const EntityId&, const EntityId&) = default;
  friend constexpr bool operator==(const EntityId&, const EntityId&) = default;

 private:
  Bytes bytes_{};
};

/// True iff `text` is exactly the canonical lowercase form.
bool is_canonical_id_text(std::string_view text);

}  // namespace cw

template <>
struct std::hash<cw::EntityId> {
  std::size_t operator()(const cw::EntityId& id) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : id.bytes()) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    return h;
  }
};
