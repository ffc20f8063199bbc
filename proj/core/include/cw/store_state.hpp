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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "cw/journal.hpp"
#include "cw/model.hpp"

namespace cw {

enum class SearchMode { kExact, kPrefix };

struct SynonymQuery {
  std::string label;
  std::optional<std::string> language;  // nullopt: any language
  SearchMode mode = SearchMode::kExact;
  std::size_t limit = 20;  // prefix mode only
  std::size_t offset = 0;  // prefix mode only
};

struct SynonymHit {
  EntityId concept_id;
  EntityId matched_term;
  friend bool operator==(const SynonymHit&, const SynonymHit&) = default;
};

enum class Role { kSubject, kObject, kAny };

struct Contribution {
  EntityId triple;
  Timestamp attributed_at;
  friend bool operator==(const Contribution&, const Contribution&) = default;
};

/// folded label -> language -> {(concept, term)}
using SynonymIndex = std::map<std::string, std::map<std::string, std::set<std::pair<EntityId, EntityId>>>>;

/// In-memory content of a store plus its derived indexes. Values are
/// immutable once published by Store; mutation happens only via apply().
class StoreState {
 public:
  /// Applies one journal operation, validating it first. Throws cw::Error
  /// and leaves the state unchanged when the operation is invalid.
  void apply(const JournalOp& op);

  /// Number of journal entries this state reflects.
  [[nodiscard]] std::uint64_t revision() const { return revision_; }
  void set_revision(std::uint64_t r) { revision_ = r; }

  [[nodiscard]] const Concept* find_concept(EntityId id) const;
  [[nodiscard]] const Term* find_term(EntityId id) const;
  [[nodiscard]] const Triple* find_triple(EntityId id) const;
  [[nodiscard]] std::optional<EntityId> term_id(const TermKey& key) const;
  [[nodiscard]] std::optional<EntityId> triple_id(EntityId subject, EntityId predicate, const ObjectRef& object) const;

  [[nodiscard]] const Concept& get_concept(EntityId id) const;  // throws kUnknownConcept
  [[nodiscard]] const Term& get_term(EntityId id) const;        // throws kUnknownTerm
  [[nodiscard]] const Triple& get_triple(EntityId id) const;    // throws kUnknownTriple

  [[nodiscard]] bool is_type_registered(std::string_view label) const;
  [[nodiscard]] bool is_relation(EntityId concept_id) const;
  [[nodiscard]] bool object_exists(const ObjectRef& object) const;

  /// For a full EC number in "zxx": a concept other than `except` that
  /// already holds it as a synonym. EC synonyms are unique per store.
  [[nodiscard]] std::optional<EntityId> ec_synonym_holder(const TermKey& key, EntityId except) const;

  [[nodiscard]] const std::string& preferred_label(EntityId concept_id) const;
  /// Preferred label for concepts, the term label for terms.
  [[nodiscard]] const std::string& label_of(const ObjectRef& object) const;

  /// Exact: every concept with a synonym whose folded form equals the
  /// folded label. Prefix: folded-prefix match, paged by offset/limit.
  /// Both order hits by preferred label, then id.
  [[nodiscard]] std::vector<SynonymHit> search_synonyms(const SynonymQuery& query) const;
  [[nodiscard]] std::vector<EntityId> find_by_synonym(const SynonymQuery& query) const;

  /// Ordered by predicate label, then object label, then triple id.
  [[nodiscard]] std::vector<Triple> triples_about(EntityId concept_id, Role role) const;

  /// Triples with a provenance entry from `user`, newest attribution first.
  [[nodiscard]] std::vector<Contribution> contributions(const std::string& user) const;

  [[nodiscard]] const std::set<EntityId>& triples_with_subject(EntityId id) const;
  [[nodiscard]] const std::set<EntityId>& triples_with_object(EntityId id) const;

  [[nodiscard]] const std::set<std::string>& types() const { return types_; }
  [[nodiscard]] const std::map<EntityId, Concept>& concepts() const { return concepts_; }
  [[nodiscard]] const std::map<EntityId, Term>& terms() const { return terms_; }
  [[nodiscard]] const std::map<EntityId, Triple>& triples() const { return triples_; }
  [[nodiscard]] const SynonymIndex& synonym_index() const { return synonym_index_; }
  [[nodiscard]] const std::map<std::string, std::set<EntityId>>& contribution_index() const { return contributions_; }

  /// Recomputes the synonym index from the concepts alone.
  [[nodiscard]] SynonymIndex rebuild_synonym_index() const;

  /// Minimal op sequence that rebuilds this state from empty.
  [[nodiscard]] std::vector<JournalOp> snapshot_ops() const;

  /// Content equality (revision is journal bookkeeping and is ignored).
  friend bool operator==(const StoreState& a, const StoreState& b);

 private:
  using SpoKey = std::tuple<EntityId, EntityId, ObjectRef>;

  void apply_register(const RegisterTypeOp& op);
  void apply_intern(const InternTermOp& op);
  void apply_put(const PutConceptOp& op);
  void apply_assert(const AssertTripleOp& op);
  void apply_withdraw(const WithdrawTripleOp& op);

  void check_ec_synonym_free(EntityId concept_id, const TermKey& key) const;
  void index_synonym(EntityId concept_id, EntityId term_id);

  std::uint64_t revision_ = 0;
  std::set<std::string> types_;
  std::map<EntityId, Term> terms_;
  std::map<TermKey, EntityId> term_index_;
  std::map<EntityId, Concept> concepts_;
  std::map<EntityId, Triple> triples_;
  std::map<SpoKey, EntityId> spo_index_;
  std::map<EntityId, std::set<EntityId>> by_subject_;
  std::map<EntityId, std::set<EntityId>> by_object_;
  SynonymIndex synonym_index_;
  std::map<std::string, std::set<EntityId>> contributions_;
};

/// Operations every fresh store starts with: the built-in semantic types,
/// one concept per semantic type and the seeded Relation predicates.
std::vector<JournalOp> seed_ops();

}  // namespace cw
