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
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cw/entity_id.hpp"

namespace cw {

using Timestamp = std::chrono::sys_seconds;

/// "2026-10-16T06:20:00Z"
std::string format_rfc3339(Timestamp ts);
/// Accepts the Z-suffixed UTC form produced by format_rfc3339.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

Timestamp now_seconds();

inline constexpr std::string_view kLangEnglish = "en";
/// Non-linguistic content: EC numbers, cross-reference keys.
inline constexpr std::string_view kLangNone = "zxx";

/// Validated (label, language) pair; the interning key of a Term.
struct TermKey {
  std::string label;
  std::string language;

  /// Trims the label, lowercases the tag. Throws cw::Error
  /// (kInvalidArgument) for an empty label, bad UTF-8, control characters
  /// or a malformed language tag.
  static TermKey make(std::string_view label, std::string_view language = kLangEnglish);

  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

struct Term {
  EntityId id;
  std::string label;
  std::string language;

  [[nodiscard]] TermKey key() const { return {label, language}; }
  friend bool operator==(const Term&, const Term&) = default;
};

/// Interned term ids are derived from the key, so equal keys share an id
/// across stores.
EntityId term_id_for(const TermKey& key);

namespace semantic_type {
inline constexpr std::string_view kEnzyme = "Enzyme";
inline constexpr std::string_view kProtein = "Protein";
inline constexpr std::string_view kChemical = "Chemical";
inline constexpr std::string_view kBiologicalProcess = "Biological Process";
inline constexpr std::string_view kRelation = "Relation";
inline constexpr std::string_view kOther = "Other";

inline constexpr std::array<std::string_view, 6> kBuiltin = {kEnzyme,           kProtein,  kChemical,
                                                             kBiologicalProcess, kRelation, kOther};

/// Id of the concept that stands for a semantic type.
EntityId concept_id(std::string_view label);
}  // namespace semantic_type

namespace predicate {
inline constexpr std::string_view kHasSynonym = "has synonym";
inline constexpr std::string_view kHasDefinition = "has definition";
inline constexpr std::string_view kHasSemanticType = "has semantic type";
inline constexpr std::string_view kHasCatalyticActivity = "has catalytic activity";
inline constexpr std::string_view kHasCofactor = "has cofactor";
inline constexpr std::string_view kHasComment = "has comment";
inline constexpr std::string_view kHasCrossReference = "has cross-reference";
inline constexpr std::string_view kTransferredTo = "transferred to";
inline constexpr std::string_view kHasFunction = "has function";

inline constexpr std::array<std::string_view, 9> kSeeded = {
    kHasSynonym, kHasDefinition, kHasSemanticType, kHasCatalyticActivity, kHasCofactor,
    kHasComment, kHasCrossReference, kTransferredTo, kHasFunction};

EntityId id(std::string_view name);
}  // namespace predicate

/// Id given to a concept created by the ENZYME import for `ec`.
EntityId enzyme_concept_id(std::string_view ec);

struct Concept {
  EntityId id;
  EntityId preferred;            // term id, always a member of synonyms
  std::set<EntityId> synonyms;   // term ids
  std::set<std::string> types;   // non-empty
  std::optional<std::string> definition;

  friend bool operator==(const Concept&, const Concept&) = default;
};

enum class SourceKind { kAuthority, kUser };

/// Who vouches for a triple. Identity is (kind, name); the release label of
/// an authority is an attribute that re-assertion may update.
struct Source {
  SourceKind kind = SourceKind::kUser;
  std::string name;
  std::string release;

  static Source authority(std::string name, std::string release) {
    return {SourceKind::kAuthority, std::move(name), std::move(release)};
  }
  static Source user(std::string name) { return {SourceKind::kUser, std::move(name), {}}; }

  [[nodiscard]] bool same_identity(const Source& other) const { return kind == other.kind && name == other.name; }
  friend bool operator==(const Source&, const Source&) = default;
};

enum class ProvenanceStatus { kSupported, kWithdrawn };

std::string_view to_string(ProvenanceStatus status);
std::string_view to_string(SourceKind kind);

struct Provenance {
  Source source;
  ProvenanceStatus status = ProvenanceStatus::kSupported;
  Timestamp timestamp{};

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

enum class ObjectKind { kConcept, kTerm };

std::string_view to_string(ObjectKind kind);

struct ObjectRef {
  ObjectKind kind = ObjectKind::kConcept;
  EntityId id;

  static ObjectRef to_concept(EntityId id) { return {ObjectKind::kConcept, id}; }
  static ObjectRef to_term(EntityId id) { return {ObjectKind::kTerm, id}; }

  friend auto operator<=>(const ObjectRef&, const ObjectRef&) = default;
};

struct Triple {
  EntityId id;
  EntityId subject;
  EntityId predicate;
  ObjectRef object;
  std::vector<Provenance> provenance;  // one entry per source identity

  [[nodiscard]] const Provenance* find_provenance(const Source& source) const;
  [[nodiscard]] bool is_supported() const;
  [[nodiscard]] bool is_supported_by(const Source& source) const;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Triple ids are derived from (subject, predicate, object).
EntityId triple_id_for(EntityId subject, EntityId predicate, const ObjectRef& object);

}  // namespace cw
