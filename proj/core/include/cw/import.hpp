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
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cw/enzyme.hpp"
#include "cw/store.hpp"

namespace cw::import {

inline constexpr std::string_view kAuthorityName = "ENZYME";

inline Source enzyme_authority(std::string release) { return Source::authority(std::string(kAuthorityName), std::move(release)); }

/// One fact derivable from a record; the subject is the record's concept.
struct Assertion {
  std::string predicate;  // seeded predicate name
  std::variant<EntityId, TermKey> object;  // concept id or term key

  [[nodiscard]] EntityId predicate_id() const;
  [[nodiscard]] ObjectRef object_ref() const;
  [[nodiscard]] ObjectSpec object_spec() const;

  friend auto operator<=>(const Assertion&, const Assertion&) = default;
};

using AssertionSet = std::set<Assertion>;

AssertionSet derive_assertions(const enzyme::Record& record);

class AmbiguousMatch : public std::runtime_error {
 public:
  AmbiguousMatch(std::string ec, std::vector<EntityId> ids);
  [[nodiscard]] const std::string& ec() const { return ec_; }
  [[nodiscard]] const std::vector<EntityId>& ids() const { return ids_; }

 private:
  std::string ec_;
  std::vector<EntityId> ids_;
};

/// The concept holding `ec` as a "zxx" synonym; any language as a fallback.
/// Throws AmbiguousMatch when more than one concept qualifies.
std::optional<EntityId> match_concept(const StoreState& state, std::string_view ec);

struct CreateConcept {
  std::string ec;
  ConceptSpec spec;  // spec.id is always set
};
struct AssertSupported {
  EntityId concept_id;
  Assertion assertion;
};
struct Withdraw {
  EntityId concept_id;
  EntityId triple;
};
/// Asserts "transferred to" for targets not yet supported.
struct MarkTransferred {
  EntityId concept_id;
  std::vector<std::string> targets;
};
using Action = std::variant<CreateConcept, AssertSupported, Withdraw, MarkTransferred>;

struct ImportReport {
  std::size_t concepts_created = 0;
  std::size_t concepts_matched = 0;
  std::size_t flags_added = 0;
  std::size_t flags_withdrawn = 0;
  std::size_t unchanged = 0;
  std::vector<std::string> ambiguous_ecs;
  std::vector<std::string> errors;

  friend bool operator==(const ImportReport&, const ImportReport&) = default;
};

std::string to_json(const ImportReport& report);

struct ImportPlan {
  Source authority;
  std::uint64_t base_revision = 0;
  std::vector<Action> actions;
  ImportReport report;  // what applying the plan will do

  [[nodiscard]] bool empty() const { return actions.empty(); }
};

struct PlanOptions {
  /// ECs whose records failed before planning (parse errors). Concepts
  /// holding them are protected from the unlisted-concept sweep.
  std::set<std::string> skipped_ecs;
  /// Records that were dropped upstream; added verbatim to report.errors.
  std::vector<std::string> upstream_errors;
};

/// Diffs `doc` against `state`. Besides per-record reconciliation, ENZYME
/// support is withdrawn from concepts no record matches, so that after
/// applying, the ENZYME-supported facts are exactly those derived from doc.
ImportPlan plan_import(const StoreState& state, const enzyme::Document& doc, const Source& authority,
                       const PlanOptions& options = {});

/// Applies `plan` as one batch. Throws cw::Error(kStalePlan) if the store
/// moved since the plan was made.
ImportReport apply_import(Store& store, const ImportPlan& plan);

}  // namespace cw::import
