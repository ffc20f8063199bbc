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

#include "cw/model.hpp"

#include <algorithm>
#include <ctime>

#include "cw/error.hpp"
#include "cw/text.hpp"

namespace cw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUnknownConcept: return "unknown_concept";
    case ErrorCode::kUnknownTerm: return "unknown_term";
    case ErrorCode::kUnknownTriple: return "unknown_triple";
    case ErrorCode::kInvalidPredicate: return "invalid_predicate";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kEcSynonymTaken: return "ec_synonym_taken";
    case ErrorCode::kStalePlan: return "stale_plan";
    case ErrorCode::kCorruptJournal: return "corrupt_journal";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

std::string format_rfc3339(Timestamp ts) {
  const std::time_t t = ts.time_since_epoch().count();
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<Timestamp> parse_rfc3339(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  auto num = [&](std::size_t pos, std::size_t len) -> int {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return -1;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  const int year = num(0, 4), month = num(5, 2), day = num(8, 2);
  const int hour = num(11, 2), minute = num(14, 2), second = num(17, 2);
  if (year < 0 || month < 1 || month > 12 || day < 1 || hour < 0 || hour > 23 || minute < 0 || minute > 59 ||
      second < 0 || second > 60) {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second};
}

Timestamp now_seconds() { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); }

TermKey TermKey::make(std::string_view label, std::string_view language) {
  if (!text::is_valid_utf8(label)) throw Error(ErrorCode::kInvalidArgument, "term label is not valid UTF-8");
  const auto trimmed = text::trim(label);
  if (trimmed.empty()) throw Error(ErrorCode::kInvalidArgument, "term label is empty");
  if (text::has_control_chars(trimmed)) {
    throw Error(ErrorCode::kInvalidArgument, "term label contains control characters");
  }
  auto lang = text::normalize_language_tag(language);
  if (!lang) throw Error(ErrorCode::kInvalidArgument, "malformed language tag: " + std::string(language));
  return {std::string(trimmed), std::move(*lang)};
}

EntityId term_id_for(const TermKey& key) { return EntityId::derived("cw-term", key.language + ":" + key.label); }

EntityId semantic_type::concept_id(std::string_view label) { return EntityId::derived("cw-semantic-type", label); }

EntityId predicate::id(std::string_view name) { return EntityId::derived("cw-predicate", name); }

EntityId enzyme_concept_id(std::string_view ec) { return EntityId::derived("cw-enzyme-concept", ec); }

std::string_view to_string(ProvenanceStatus status) {
  return status == ProvenanceStatus::kSupported ? "supported" : "withdrawn";
}

std::string_view to_string(SourceKind kind) { return kind == SourceKind::kAuthority ? "authority" : "user"; }

std::string_view to_string(ObjectKind kind) { return kind == ObjectKind::kConcept ? "concept" : "term"; }

const Provenance* Triple::find_provenance(const Source& source) const {
  auto it = std::find_if(provenance.begin(), provenance.end(),
                         [&](const Provenance& p) { return p.source.same_identity(source); });
  return it == provenance.end() ? nullptr : &*it;
}

bool Triple::is_supported() const {
  return std::any_of(provenance.begin(), provenance.end(),
                     [](const Provenance& p) { return p.status == ProvenanceStatus::kSupported; });
}

bool Triple::is_supported_by(const Source& source) const {
  const auto* p = find_provenance(source);
  return p != nullptr && p->status == ProvenanceStatus::kSupported;
}

EntityId triple_id_for(EntityId subject, EntityId predicate, const ObjectRef& object) {
  std::string name = subject.str();
  name += ' ';
  name += predicate.str();
  name += ' ';
  name += object.kind == ObjectKind::kConcept ? 'c' : 't';
  name += object.id.str();
  return EntityId::derived("cw-triple", name);
}

}  // namespace cw
