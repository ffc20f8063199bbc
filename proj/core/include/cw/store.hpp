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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cw/model.hpp"
#include "cw/store_state.hpp"

namespace cw {

/// Input for put_concept. Terms are given by value and interned on the way in.
struct ConceptSpec {
  std::optional<EntityId> id;  // nullopt: a fresh version-4 id
  TermKey preferred;
  std::vector<TermKey> synonyms;  // preferred is added implicitly
  std::set<std::string> types;
  std::optional<std::string> definition;
};

/// Object position of an assertion: an existing concept or term, or a term
/// key interned on demand.
using ObjectSpec = std::variant<ObjectRef, TermKey>;

struct AssertResult {
  Triple triple;
  bool created = false;
};

struct WithdrawResult {
  Triple triple;
  bool changed = false;  // false: no matching supported entry
};

/// Mutation surface shared by single operations and import batches.
class Mutator {
 public:
  virtual ~Mutator() = default;

  virtual EntityId put_concept(const ConceptSpec& spec) = 0;
  virtual AssertResult assert_triple(EntityId subject, EntityId predicate, const ObjectSpec& object,
                                     const Source& source) = 0;
  virtual WithdrawResult withdraw_provenance(EntityId triple, const Source& source) = 0;
  virtual void register_type(const std::string& label) = 0;
};

/// Mutations staged against a private copy of the state; nothing reaches
/// the journal or readers until the enclosing Store::batch() commits.
class Batch final : public Mutator {
 public:
  EntityId put_concept(const ConceptSpec& spec) override;
  AssertResult assert_triple(EntityId subject, EntityId predicate, const ObjectSpec& object,
                             const Source& source) override;
  WithdrawResult withdraw_provenance(EntityId triple, const Source& source) override;
  void register_type(const std::string& label) override;

  [[nodiscard]] const StoreState& state() const { return *scratch_; }
  [[nodiscard]] std::size_t pending() const { return ops_.size(); }

 private:
  friend class Store;
  Batch(std::shared_ptr<StoreState> scratch, Timestamp now) : scratch_(std::move(scratch)), now_(now) {}
  void stage(std::vector<JournalOp> ops);

  std::shared_ptr<StoreState> scratch_;
  Timestamp now_;
  std::vector<JournalOp> ops_;
};

struct StoreOptions {
  std::function<Timestamp()> clock = now_seconds;
  bool sync_each_commit = false;
};

/// Journaled repository of concepts, terms and triples; the only mutation
/// point of the system.
///
/// Single writer, many readers: writers are serialized on an internal
/// mutex, and readers take immutable snapshots that are never modified
/// after publication (copy-on-write when a snapshot is still shared).
class Store final : public Mutator {
 public:
  /// Opens (or seeds) the store in directory `dir`. Replays journal.cwj if
  /// present; otherwise writes the seed entries. Throws cw::Error.
  static std::unique_ptr<Store> open(const std::filesystem::path& dir, StoreOptions options = {});

  ~Store() override;
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  [[nodiscard]] std::shared_ptr<const StoreState> snapshot() const;
  [[nodiscard]] std::uint64_t revision() const;
  [[nodiscard]] const std::vector<std::string>& open_warnings() const { return warnings_; }
  [[nodiscard]] std::filesystem::path journal_path() const;

  EntityId put_concept(const ConceptSpec& spec) override;
  AssertResult assert_triple(EntityId subject, EntityId predicate, const ObjectSpec& object,
                             const Source& source) override;
  WithdrawResult withdraw_provenance(EntityId triple, const Source& source) override;
  void register_type(const std::string& label) override;

  /// Runs `fn` against a staged copy and commits all of its mutations as one
  /// journal write. If `expected_revision` is given and differs from the
  /// current revision, throws kStalePlan before staging anything. If `fn`
  /// or the journal write throws, nothing is committed.
  void batch(const std::function<void(Batch&)>& fn, std::optional<std::uint64_t> expected_revision = std::nullopt);

  /// Rewrites the journal as a minimal snapshot (write-new-then-rename).
  void compact();

  void flush();

 private:
  Store(std::filesystem::path dir, StoreOptions options);
  void commit(std::vector<JournalOp> ops);

  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<std::string> warnings_;
};

// Op planners used by Store and Batch. Each validates against `state` and
// returns the journal operations that implement the mutation; they never
// modify the state.
namespace ops {
std::vector<JournalOp> put_concept(const StoreState& state, const ConceptSpec& spec, EntityId id);
std::vector<JournalOp> assert_triple(const StoreState& state, EntityId subject, EntityId predicate,
                                     const ObjectSpec& object, const Source& source, Timestamp now,
                                     EntityId* triple_id);
std::vector<JournalOp> withdraw(const StoreState& state, EntityId triple, const Source& source, Timestamp now);
}  // namespace ops

}  // namespace cw
