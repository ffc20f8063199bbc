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

#include "cw/store.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>

#include "cw/error.hpp"
#include "cw/journal.hpp"
#include "cw/text.hpp"

namespace cw {

// --- planners --------------------------------------------------------------

namespace ops {
namespace {

EntityId resolve_term(const StoreState& state, const TermKey& key, std::vector<JournalOp>& out,
                      std::set<TermKey>& pending) {
  if (auto id = state.term_id(key)) return *id;
  const auto id = term_id_for(key);
  if (pending.insert(key).second) out.emplace_back(InternTermOp{Term{id, key.label, key.language}});
  return id;
}

void check_source(const Source& source) {
  if (text::trim(source.name).empty()) throw Error(ErrorCode::kInvalidArgument, "source name is empty");
  if (!text::is_valid_utf8(source.name) || text::has_control_chars(source.name)) {
    throw Error(ErrorCode::kInvalidArgument, "malformed source name");
  }
}

}  // namespace

std::vector<JournalOp> put_concept(const StoreState& state, const ConceptSpec& spec, EntityId id) {
  if (spec.types.empty()) throw Error(ErrorCode::kInvalidArgument, "a concept needs at least one semantic type");
  for (const auto& t : spec.types) {
    if (!state.is_type_registered(t)) throw Error(ErrorCode::kInvalidArgument, "unknown semantic type '" + t + "'");
  }
  if (spec.definition && (text::trim(*spec.definition).empty() || !text::is_valid_utf8(*spec.definition))) {
    throw Error(ErrorCode::kInvalidArgument, "definition must be non-empty UTF-8 text");
  }

  std::vector<JournalOp> out;
  std::set<TermKey> pending;
  Concept c;
  c.id = id;
  c.types = spec.types;
  c.definition = spec.definition;
  c.preferred = resolve_term(state, spec.preferred, out, pending);
  c.synonyms.insert(c.preferred);
  for (const auto& key : spec.synonyms) c.synonyms.insert(resolve_term(state, key, out, pending));

  if (const auto* existing = state.find_concept(id)) {
    const bool same = existing->preferred == c.preferred && existing->types == c.types &&
                      existing->definition == c.definition &&
                      std::includes(existing->synonyms.begin(), existing->synonyms.end(), c.synonyms.begin(),
                                    c.synonyms.end());
    if (!same) throw Error(ErrorCode::kConflict, "concept " + id.str() + " already exists with different content");
    return out;
  } else {
    if (state.find_term(id) || state.find_triple(id)) {
      throw Error(ErrorCode::kConflict, "id " + id.str() + " is bound to another entity");
    }
    std::set<TermKey> keys(spec.synonyms.begin(), spec.synonyms.end());
    keys.insert(spec.preferred);
    for (const auto& key : keys) {
      if (auto holder = state.ec_synonym_holder(key, id)) {
        throw Error(ErrorCode::kEcSynonymTaken,
                    "EC number " + key.label + " is already a synonym of concept " + holder->str());
      }
    }
  }
  out.emplace_back(PutConceptOp{std::move(c)});
  return out;
}

std::vector<JournalOp> assert_triple(const StoreState& state, EntityId subject, EntityId predicate,
                                     const ObjectSpec& object, const Source& source, Timestamp now,
                                     EntityId* triple_id) {
  const auto& subject_concept = state.get_concept(subject);
  (void)state.get_concept(predicate);
  if (!state.is_relation(predicate)) {
    throw Error(ErrorCode::kInvalidPredicate, "predicate " + predicate.str() + " is not typed Relation");
  }
  check_source(source);

  std::vector<JournalOp> out;
  std::set<TermKey> pending;
  ObjectRef ref;
  std::optional<TermKey> object_key;
  if (const auto* r = std::get_if<ObjectRef>(&object)) {
    if (!state.object_exists(*r)) {
      throw Error(r->kind == ObjectKind::kConcept ? ErrorCode::kUnknownConcept : ErrorCode::kUnknownTerm,
                  "unknown object " + r->id.str());
    }
    ref = *r;
    if (ref.kind == ObjectKind::kTerm) object_key = state.get_term(ref.id).key();
  } else {
    object_key = std::get<TermKey>(object);
    ref = ObjectRef::to_term(resolve_term(state, *object_key, out, pending));
  }

  if (predicate == predicate::id(predicate::kHasSynonym) && object_key &&
      !subject_concept.synonyms.contains(ref.id)) {
    if (auto holder = state.ec_synonym_holder(*object_key, subject)) {
      throw Error(ErrorCode::kEcSynonymTaken,
                  "EC number " + object_key->label + " is already a synonym of concept " + holder->str());
    }
  }

  const auto id = state.triple_id(subject, predicate, ref).value_or(triple_id_for(subject, predicate, ref));
  if (triple_id != nullptr) *triple_id = id;
  out.emplace_back(AssertTripleOp{id, subject, predicate, ref, {Provenance{source, ProvenanceStatus::kSupported, now}}});
  return out;
}

std::vector<JournalOp> withdraw(const StoreState& state, EntityId triple, const Source& source, Timestamp now) {
  const auto& t = state.get_triple(triple);
  if (!t.is_supported_by(source)) return {};
  return {WithdrawTripleOp{triple, source, now}};
}

}  // namespace ops

// --- Batch -----------------------------------------------------------------

void Batch::stage(std::vector<JournalOp> ops) {
  for (auto& op : ops) {
    scratch_->apply(op);
    ops_.push_back(std::move(op));
  }
}

EntityId Batch::put_concept(const ConceptSpec& spec) {
  const auto id = spec.id.value_or(EntityId::random());
  stage(ops::put_concept(*scratch_, spec, id));
  return id;
}

AssertResult Batch::assert_triple(EntityId subject, EntityId predicate, const ObjectSpec& object,
                                  const Source& source) {
  EntityId id;
  auto planned = ops::assert_triple(*scratch_, subject, predicate, object, source, now_, &id);
  const bool created = scratch_->find_triple(id) == nullptr;
  stage(std::move(planned));
  return {scratch_->get_triple(id), created};
}

WithdrawResult Batch::withdraw_provenance(EntityId triple, const Source& source) {
  auto planned = ops::withdraw(*scratch_, triple, source, now_);
  const bool changed = !planned.empty();
  stage(std::move(planned));
  return {scratch_->get_triple(triple), changed};
}

void Batch::register_type(const std::string& label) {
  if (!scratch_->is_type_registered(label)) stage({RegisterTypeOp{label}});
}

// --- Store -----------------------------------------------------------------

struct Store::Impl {
  Impl(std::filesystem::path d, StoreOptions o)
      : dir(std::move(d)), options(std::move(o)), journal(dir / kJournalFileName) {}

  std::filesystem::path dir;
  StoreOptions options;
  JournalFile journal;
  std::mutex writer;
  mutable std::shared_mutex guard;
  std::shared_ptr<StoreState> state = std::make_shared<StoreState>();

  std::shared_ptr<StoreState> current() const {
    std::shared_lock lock(guard);
    return state;
  }

  void publish(std::shared_ptr<StoreState> next) {
    std::unique_lock lock(guard);
    state = std::move(next);
  }

  std::vector<JournalEntry> number(std::vector<JournalOp> ops, std::uint64_t after) const {
    std::vector<JournalEntry> entries;
    entries.reserve(ops.size());
    const auto ts = options.clock();
    for (auto& op : ops) entries.push_back({++after, ts, std::move(op)});
    return entries;
  }
};

Store::Store(std::filesystem::path dir, StoreOptions options)
    : impl_(std::make_unique<Impl>(std::move(dir), std::move(options))) {}

Store::~Store() = default;

std::unique_ptr<Store> Store::open(const std::filesystem::path& dir, StoreOptions options) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::kIo, dir.string() + " is not a directory");
  std::unique_ptr<Store> store(new Store(dir, std::move(options)));
  auto& impl = *store->impl_;

  auto loaded = impl.journal.load();
  store->warnings_ = std::move(loaded.warnings);
  if (loaded.entries.empty()) {
    std::lock_guard lock(impl.writer);
    store->commit(seed_ops());
    impl.journal.sync();
    return store;
  }
  auto state = std::make_shared<StoreState>();
  for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
    try {
      state->apply(loaded.entries[i].op);
    } catch (const Error& e) {
      throw Error(ErrorCode::kCorruptJournal, impl.journal.path().filename().string() + ":" + std::to_string(i + 1) +
                                                  ": cannot replay " + std::string(op_tag(loaded.entries[i].op)) +
                                                  ": " + e.what());
    }
  }
  state->set_revision(loaded.entries.size());
  impl.publish(std::move(state));
  return store;
}

std::shared_ptr<const StoreState> Store::snapshot() const { return impl_->current(); }

std::uint64_t Store::revision() const { return impl_->current()->revision(); }

std::filesystem::path Store::journal_path() const { return impl_->journal.path(); }

void Store::commit(std::vector<JournalOp> ops) {
  // Caller holds impl_->writer, so nobody else modifies the state object.
  if (ops.empty()) return;
  auto& impl = *impl_;
  auto base = impl.current();
  auto entries = impl.number(std::move(ops), base->revision());
  impl.journal.append(entries);
  if (impl.options.sync_each_commit) impl.journal.sync();

  {
    std::unique_lock lock(impl.guard);
    // base + impl.state are the only owners: nobody holds a snapshot.
    if (impl.state.use_count() == 2) {
      base.reset();
      for (const auto& e : entries) impl.state->apply(e.op);
      impl.state->set_revision(entries.back().seq);
      return;
    }
  }
  auto next = std::make_shared<StoreState>(*base);
  for (const auto& e : entries) next->apply(e.op);
  next->set_revision(entries.back().seq);
  impl.publish(std::move(next));
}

EntityId Store::put_concept(const ConceptSpec& spec) {
  std::lock_guard lock(impl_->writer);
  const auto id = spec.id.value_or(EntityId::random());
  commit(ops::put_concept(*impl_->current(), spec, id));
  return id;
}

AssertResult Store::assert_triple(EntityId subject, EntityId predicate, const ObjectSpec& object,
                                  const Source& source) {
  std::lock_guard lock(impl_->writer);
  EntityId id;
  bool created = false;
  {
    auto state = impl_->current();
    auto planned = ops::assert_triple(*state, subject, predicate, object, source, impl_->options.clock(), &id);
    created = state->find_triple(id) == nullptr;
    state.reset();
    commit(std::move(planned));
  }
  return {impl_->current()->get_triple(id), created};
}

WithdrawResult Store::withdraw_provenance(EntityId triple, const Source& source) {
  std::lock_guard lock(impl_->writer);
  auto planned = ops::withdraw(*impl_->current(), triple, source, impl_->options.clock());
  const bool changed = !planned.empty();
  commit(std::move(planned));
  return {impl_->current()->get_triple(triple), changed};
}

void Store::register_type(const std::string& label) {
  std::lock_guard lock(impl_->writer);
  if (impl_->current()->is_type_registered(label)) return;
  commit({RegisterTypeOp{label}});
}

void Store::batch(const std::function<void(Batch&)>& fn, std::optional<std::uint64_t> expected_revision) {
  auto& impl = *impl_;
  std::lock_guard lock(impl.writer);
  auto base = impl.current();
  if (expected_revision && *expected_revision != base->revision()) {
    throw Error(ErrorCode::kStalePlan, "store changed since the plan was made (revision " +
                                           std::to_string(*expected_revision) + " != " +
                                           std::to_string(base->revision()) + ")");
  }
  Batch batch(std::make_shared<StoreState>(*base), impl.options.clock());
  fn(batch);
  if (batch.ops_.empty()) return;

  auto entries = impl.number(std::move(batch.ops_), base->revision());
  impl.journal.append(entries);
  impl.journal.sync();
  batch.scratch_->set_revision(entries.back().seq);
  impl.publish(std::move(batch.scratch_));
}

void Store::compact() {
  auto& impl = *impl_;
  std::lock_guard lock(impl.writer);
  auto base = impl.current();
  auto entries = impl.number(base->snapshot_ops(), 0);
  impl.journal.replace(entries);
  auto next = std::make_shared<StoreState>(*base);
  next->set_revision(entries.size());
  impl.publish(std::move(next));
}

void Store::flush() {
  std::lock_guard lock(impl_->writer);
  impl_->journal.sync();
}

}  // namespace cw
