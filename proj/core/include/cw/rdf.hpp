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
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cw/store_state.hpp"

namespace cw::rdf {

inline constexpr std::string_view kConceptBase = "http://www.conceptwiki.org/concept/";

enum class Format { kNTriples, kTurtle };
/// Literal: term objects become language-tagged literals. Resource: term
/// objects become URIs, each with one label statement.
enum class ObjectStyle { kLiteral, kResource };

std::optional<Format> parse_format(std::string_view text);
std::optional<ObjectStyle> parse_object_style(std::string_view text);

struct ExportOptions {
  Format format = Format::kNTriples;
  ObjectStyle style = ObjectStyle::kLiteral;
  bool include_withdrawn = false;  // default: only triples with a supported entry
};

struct Literal {
  std::string lexical;
  std::string language;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Statement {
  std::string subject;    // URI
  std::string predicate;  // URI
  std::variant<std::string, Literal> object;  // URI or literal
  friend auto operator<=>(const Statement&, const Statement&) = default;
};

std::string uri_for(EntityId id);

/// Escapes '"', '\\', LF, CR and TAB; everything else passes through.
std::string escape_literal(std::string_view text);

/// Rendered statement line including the trailing newline.
std::string render(const Statement& statement, Format format);

/// Turtle prefix line (with newline); empty for N-Triples.
std::string preamble(Format format);

/// Statements for one stored triple under `style` (the triple itself, plus a
/// label statement for a term object in resource style).
std::vector<Statement> statements_for(const StoreState& state, const Triple& triple, ObjectStyle style);

/// Sorted statements about `concept_id` (as subject or object). Throws
/// cw::Error(kUnknownConcept).
std::vector<Statement> concept_statements(const StoreState& state, EntityId concept_id, const ExportOptions& options);

std::string export_concept(const StoreState& state, EntityId concept_id, const ExportOptions& options);

/// Streams every included triple once, subject by subject in id order, then
/// (resource style) one label statement per referenced term. Returns the
/// number of statements written.
std::size_t export_all(const StoreState& state, std::ostream& out, const ExportOptions& options);

}  // namespace cw::rdf
