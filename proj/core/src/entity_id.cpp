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

#include "cw/entity_id.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <boost/uuid/name_generator_sha1.hpp>
#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/uuid.hpp>

namespace cw {
namespace {

constexpr std::string_view kNamespaceBase = "http://www.conceptwiki.org/ns/";

EntityId from_boost(const boost::uuids::uuid& u) {
  EntityId::Bytes b{};
  std::copy(u.begin(), u.end(), b.begin());
  return EntityId(b);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr bool is_hyphen_position(std::size_t i) { return i == 8 || i == 13 || i == 18 || i == 23; }

}  // namespace

EntityId EntityId::random() {
  thread_local boost::uuids::random_generator gen;
  return from_boost(gen());
}

EntityId EntityId::derived(std::string_view namespace_text, std::string_view name) {
  if (namespace_text.empty() || name.empty()) {
    throw std::invalid_argument("derived id needs non-empty namespace and name");
  }
  boost::uuids::name_generator_sha1 url_gen(boost::uuids::ns::url());
  std::string ns_name(kNamespaceBase);
  ns_name.append(namespace_text);
  const auto ns = url_gen(ns_name.data(), ns_name.size());
  boost::uuids::name_generator_sha1 gen(ns);
  return from_boost(gen(name.data(), name.size()));
}

std::optional<EntityId> EntityId::parse(std::string_view text) {
  if (text.size() != 36) return std::nullopt;
  Bytes out{};
  std::size_t nibble = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_hyphen_position(i)) {
      if (text[i] != '-') return std::nullopt;
      continue;
    }
    const int v = hex_value(text[i]);
    if (v < 0) return std::nullopt;
    auto& byte = out[nibble / 2];
    byte = static_cast<std::uint8_t>((nibble % 2 == 0) ? (v << 4) : (byte | v));
    ++nibble;
  }
  return EntityId(out);
}

EntityId EntityId::from_string(std::string_view text) {
  if (auto id = parse(text)) return *id;
  throw std::invalid_argument("malformed UUID: " + std::string(text));
}

std::string EntityId::str() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(36);
  for (std::size_t i = 0; i < bytes_.size(); ++i) {
    if (i == 4 || i == 6 || i == 8 || i == 10) out.push_back('-');
    out.push_back(kHex[bytes_[i] >> 4]);
    out.push_back(kHex[bytes_[i] & 0x0f]);
  }
  return out;
}

bool EntityId::is_nil() const {
  return std::all_of(bytes_.begin(), bytes_.end(), [](auto b) { return b == 0; });
}

bool is_canonical_id_text(std::string_view text) {
  if (text.size() != 36) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (is_hyphen_position(i)) {
      if (c != '-') return false;
    } else if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      return false;
    }
  }
  return true;
}

}  // namespace cw
