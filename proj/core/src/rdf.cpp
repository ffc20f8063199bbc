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

#include "cw/rdf.hpp"

#include <algorithm>
#include <set>

namespace cw::rdf {
namespace {

void render_uri(std::string& out, std::string_view uri, Format format) {
  if (format == Format::kTurtle && uri.starts_with(kConceptBase)) {
    out += "cw:";
    out += uri.substr(kConceptBase.size());
    return;
  }
  out += '<';
  out += uri;
  out += '>';
}

bool included(const Triple& t, const ExportOptions& options) { return options.include_withdrawn || t.is_supported(); }

Statement label_statement(const Term& term) {
  return {uri_for(term.id), uri_for(predicate::id(predicate::kHasSynonym)), Literal{term.label, term.language}};
}

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
  if (text == "ntriples" || text == "nt") return Format::kNTriples;
  if (text == "turtle" || text == "ttl") return Format::kTurtle;
  return std::nullopt;
}

std::optional<ObjectStyle> parse_object_style(std::string_view text) {
  if (text == "literal") return ObjectStyle::kLiteral;
  if (text == "resource") return ObjectStyle::kResource;
  return std::nullopt;
}

std::string uri_for(EntityId id) { return std::string(kConceptBase) + id.str(); }

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string render(const Statement& s, Format format) {
  std::string out;
  render_uri(out, s.subject, format);
  out += ' ';
  render_uri(out, s.predicate, format);
  out += ' ';
  if (const auto* uri = std::get_if<std::string>(&s.object)) {
    render_uri(out, *uri, format);
  } else {
    const auto& lit = std::get<Literal>(s.object);
    out += '"';
    out += escape_literal(lit.lexical);
    out += '"';
    if (!lit.language.empty()) {
      out += '@';
      out += lit.language;
    }
  }
  out += " .\n";
  return out;
}

std::string preamble(Format format) {
  if (format == Format::kNTriples) return {};
  return "@prefix cw: <" + std::string(kConceptBase) + "> .\n";
}

std::vector<Statement> statements_for(const StoreState& state, const Triple& t, ObjectStyle style) {
  std::vector<Statement> out;
  Statement s{uri_for(t.subject), uri_for(t.predicate), {}};
  if (t.object.kind == ObjectKind::kConcept) {
    s.object = uri_for(t.object.id);
    out.push_back(std::move(s));
    return out;
  }
  const auto& term = state.get_term(t.object.id);
  if (style == ObjectStyle::kLiteral) {
    s.object = Literal{term.label, term.language};
    out.push_back(std::move(s));
  } else {
    s.object = uri_for(term.id);
    out.push_back(std::move(s));
    out.push_back(label_statement(term));
  }
  return out;
}

std::vector<Statement> concept_statements(const StoreState& state, EntityId concept_id, const ExportOptions& options) {
  (void)state.get_concept(concept_id);
  std::set<EntityId> ids = state.triples_with_subject(concept_id);
  const auto& as_object = state.triples_with_object(concept_id);
  ids.insert(as_object.begin(), as_object.end());

  std::vector<Statement> out;
  for (const auto& id : ids) {
    const auto& t = state.get_triple(id);
    if (!included(t, options)) continue;
    auto part = statements_for(state, t, options.style);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string export_concept(const StoreState& state, EntityId concept_id, const ExportOptions& options) {
  std::vector<std::string> lines;
  for (const auto& s : concept_statements(state, concept_id, options)) lines.push_back(render(s, options.format));
  std::sort(lines.begin(), lines.end());
  std::string out = lines.empty() ? std::string() : preamble(options.format);
  for (const auto& line : lines) out += line;
  return out;
}

std::size_t export_all(const StoreState& state, std::ostream& out, const ExportOptions& options) {
  std::size_t count = 0;
  bool started = false;
  auto emit = [&](const std::string& line) {
    if (!started) {
      out << preamble(options.format);
      started = true;
    }
    out << line;
    ++count;
  };

  std::vector<std::string> lines;
  for (const auto& [concept_id, c] : state.concepts()) {
    lines.clear();
    for (const auto& id : state.triples_with_subject(concept_id)) {
      const auto& t = state.get_triple(id);
      if (!included(t, options)) continue;
      // Label statements for term objects are written once, below.
      lines.push_back(render(statements_for(state, t, ObjectStyle::kLiteral).front(), options.format));
      if (options.style == ObjectStyle::kResource && t.object.kind == ObjectKind::kTerm) {
        lines.back() = render(Statement{uri_for(t.subject), uri_for(t.predicate), uri_for(t.object.id)}, options.format);
      }
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) emit(line);
  }

  if (options.style == ObjectStyle::kResource) {
    for (const auto& [term_id, term] : state.terms()) {
      const auto& users = state.triples_with_object(term_id);
      const bool referenced = std::any_of(users.begin(), users.end(), [&](EntityId id) {
        const auto& t = state.get_triple(id);
        return t.object.kind == ObjectKind::kTerm && included(t, options);
      });
      if (referenced) emit(render(label_statement(term), options.format));
    }
  }
  return count;
}

}  // namespace cw::rdf
