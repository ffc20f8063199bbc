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

#include "cw/store_state.hpp"

#include <algorithm>
#include <variant>

#include "cw/ec_number.hpp"
#include "cw/error.hpp"
#include "cw/text.hpp"

namespace cw {
namespace {

const std::set<EntityId> kNoIds;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

void check_source(const Source& s) {
  if (text::trim(s.name).empty()) invalid("provenance source name is empty");
  if (!text::is_valid_utf8(s.name) || !text::is_valid_utf8(s.release)) invalid("provenance source is not valid UTF-8");
}

}  // namespace

void StoreState::apply(const JournalOp& op) {
  std::visit(Overloaded{
                 [this](const RegisterTypeOp& o) { apply_register(o); },
                 [this](const InternTermOp& o) { apply_intern(o); },
                 [this](const PutConceptOp& o) { apply_put(o); },
                 [this](const AssertTripleOp& o) { apply_assert(o); },
                 [this](const WithdrawTripleOp& o) { apply_withdraw(o); },
             },
             op);
}

void StoreState::apply_register(const RegisterTypeOp& op) {
  const auto label = text::trim(op.label);
  if (label.empty() || label != op.label) invalid("semantic type label must be non-empty and trimmed");
  if (!text::is_valid_utf8(label) || text::has_control_chars(label)) invalid("malformed semantic type label");
  types_.insert(op.label);
}

void StoreState::apply_intern(const InternTermOp& op) {
  const auto key = TermKey::make(op.term.label, op.term.language);
  if (key.label != op.term.label || key.language != op.term.language) {
    invalid("term '" + op.term.label + "' is not in normalized form");
  }
  if (auto it = term_index_.find(key); it != term_index_.end()) {
    if (it->second != op.term.id) {
      throw Error(ErrorCode::kConflict, "term '" + key.label + "'@" + key.language + " already interned as " +
                                            it->second.str());
    }
    return;
  }
  if (terms_.contains(op.term.id)) {
    throw Error(ErrorCode::kConflict, "term id " + op.term.id.str() + " is bound to another label");
  }
  terms_.emplace(op.term.id, op.term);
  term_index_.emplace(key, op.term.id);
}

std::optional<EntityId> StoreState::ec_synonym_holder(const TermKey& key, EntityId except) const {
  if (key.language != kLangNone || !validate_ec(key.label)) return std::nullopt;
  const auto by_folded = synonym_index_.find(text::fold(key.label));
  if (by_folded == synonym_index_.end()) return std::nullopt;
  const auto by_lang = by_folded->second.find(key.language);
  if (by_lang == by_folded->second.end()) return std::nullopt;
  for (const auto& [holder, _] : by_lang->second) {
    if (holder != except) return holder;
  }
  return std::nullopt;
}

void StoreState::check_ec_synonym_free(EntityId concept_id, const TermKey& key) const {
  if (auto holder = ec_synonym_holder(key, concept_id)) {
    throw Error(ErrorCode::kEcSynonymTaken,
                "EC number " + key.label + " is already a synonym of concept " + holder->str());
  }
}

void StoreState::index_synonym(EntityId concept_id, EntityId term_id) {
  const auto& term = get_term(term_id);
  synonym_index_[text::fold(term.label)][term.language].emplace(concept_id, term_id);
}

void StoreState::apply_put(const PutConceptOp& op) {
  const auto& c = op.concept_value;
  if (c.types.empty()) invalid("concept " + c.id.str() + " has no semantic type");
  for (const auto& t : c.types) {
    if (!types_.contains(t)) invalid("unregistered semantic type '" + t + "'");
  }
  if (!c.synonyms.contains(c.preferred)) invalid("preferred term must be one of the synonyms");
  for (const auto& s : c.synonyms) {
    if (!terms_.contains(s)) throw Error(ErrorCode::kUnknownTerm, "unknown term " + s.str());
  }
  if (c.definition && (!text::is_valid_utf8(*c.definition) || text::trim(*c.definition).empty())) {
    invalid("definition must be non-empty UTF-8 text");
  }

  if (auto it = concepts_.find(c.id); it != concepts_.end()) {
    const auto& existing = it->second;
    const bool same = existing.preferred == c.preferred && existing.types == c.types &&
                      existing.definition == c.definition &&
                      std::includes(existing.synonyms.begin(), existing.synonyms.end(), c.synonyms.begin(),
                                    c.synonyms.end());
    if (!same) throw Error(ErrorCode::kConflict, "concept " + c.id.str() + " already exists with different content");
    return;
  }
  if (terms_.contains(c.id) || triples_.contains(c.id)) {
    throw Error(ErrorCode::kConflict, "id " + c.id.str() + " is bound to another entity");
  }
  for (const auto& s : c.synonyms) check_ec_synonym_free(c.id, get_term(s).key());

  concepts_.emplace(c.id, c);
  for (const auto& s : c.synonyms) index_synonym(c.id, s);
}

void StoreState::apply_assert(const AssertTripleOp& op) {
  (void)get_concept(op.subject);
  const auto& pred = get_concept(op.predicate);
  if (!pred.types.contains(std::string(semantic_type::kRelation))) {
    throw Error(ErrorCode::kInvalidPredicate, "concept " + op.predicate.str() + " is not a Relation");
  }
  if (!object_exists(op.object)) {
    throw Error(op.object.kind == ObjectKind::kConcept ? ErrorCode::kUnknownConcept : ErrorCode::kUnknownTerm,
                "unknown object " + op.object.id.str());
  }
  if (op.provenance.empty()) invalid("assertion without provenance");
  for (const auto& p : op.provenance) check_source(p.source);

  const SpoKey key{op.subject, op.predicate, op.object};
  const auto existing = spo_index_.find(key);
  if (existing != spo_index_.end() && existing->second != op.id) {
    throw Error(ErrorCode::kConflict, "triple already stored as " + existing->second.str());
  }
  if (existing == spo_index_.end() && (triples_.contains(op.id) || concepts_.contains(op.id) || terms_.contains(op.id))) {
    throw Error(ErrorCode::kConflict, "id " + op.id.str() + " is bound to another entity");
  }
  const bool adds_synonym = op.predicate == predicate::id(predicate::kHasSynonym) &&
                            op.object.kind == ObjectKind::kTerm &&
                            !get_concept(op.subject).synonyms.contains(op.object.id);
  if (adds_synonym) check_ec_synonym_free(op.subject, get_term(op.object.id).key());

  // Validated; mutate.
  auto [it, created] = triples_.try_emplace(op.id);
  Triple& t = it->second;
  if (created) {
    t.id = op.id;
    t.subject = op.subject;
    t.predicate = op.predicate;
    t.object = op.object;
    spo_index_.emplace(key, op.id);
    by_subject_[op.subject].insert(op.id);
    by_object_[op.object.id].insert(op.id);
  }
  for (const auto& p : op.provenance) {
    auto entry = std::find_if(t.provenance.begin(), t.provenance.end(),
                              [&](const Provenance& q) { return q.source.same_identity(p.source); });
    if (entry == t.provenance.end()) {
      t.provenance.push_back(p);
    } else {
      *entry = p;
    }
    if (p.source.kind == SourceKind::kUser) contributions_[p.source.name].insert(op.id);
  }
  if (adds_synonym) {
    concepts_.at(op.subject).synonyms.insert(op.object.id);
    index_synonym(op.subject, op.object.id);
  }
}

void StoreState::apply_withdraw(const WithdrawTripleOp& op) {
  auto it = triples_.find(op.triple);
  if (it == triples_.end()) throw Error(ErrorCode::kUnknownTriple, "unknown triple " + op.triple.str());
  auto& prov = it->second.provenance;
  auto entry = std::find_if(prov.begin(), prov.end(),
                            [&](const Provenance& q) { return q.source.same_identity(op.source); });
  if (entry == prov.end()) invalid("triple " + op.triple.str() + " has no entry for source " + op.source.name);
  entry->status = ProvenanceStatus::kWithdrawn;
  entry->timestamp = op.timestamp;
}

const Concept* StoreState::find_concept(EntityId id) const {
  auto it = concepts_.find(id);
  return it == concepts_.end() ? nullptr : &it->second;
}

const Term* StoreState::find_term(EntityId id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? nullptr : &it->second;
}

const Triple* StoreState::find_triple(EntityId id) const {
  auto it = triples_.find(id);
  return it == triples_.end() ? nullptr : &it->second;
}

std::optional<EntityId> StoreState::term_id(const TermKey& key) const {
  auto it = term_index_.find(key);
  if (it == term_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EntityId> StoreState::triple_id(EntityId subject, EntityId predicate, const ObjectRef& object) const {
  auto it = spo_index_.find({subject, predicate, object});
  if (it == spo_index_.end()) return std::nullopt;
  return it->second;
}

const Concept& StoreState::get_concept(EntityId id) const {
  if (const auto* c = find_concept(id)) return *c;
  throw Error(ErrorCode::kUnknownConcept, "unknown concept " + id.str());
}

const Term& StoreState::get_term(EntityId id) const {
  if (const auto* t = find_term(id)) return *t;
  throw Error(ErrorCode::kUnknownTerm, "unknown term " + id.str());
}

const Triple& StoreState::get_triple(EntityId id) const {
  if (const auto* t = find_triple(id)) return *t;
  throw Error(ErrorCode::kUnknownTriple, "unknown triple " + id.str());
}

bool StoreState::is_type_registered(std::string_view label) const { return types_.contains(std::string(label)); }

bool StoreState::is_relation(EntityId concept_id) const {
  const auto* c = find_concept(concept_id);
  return c != nullptr && c->types.contains(std::string(semantic_type::kRelation));
}

bool StoreState::object_exists(const ObjectRef& object) const {
  return object.kind == ObjectKind::kConcept ? concepts_.contains(object.id) : terms_.contains(object.id);
}

const std::string& StoreState::preferred_label(EntityId concept_id) const {
  return get_term(get_concept(concept_id).preferred).label;
}

const std::string& StoreState::label_of(const ObjectRef& object) const {
  return object.kind == ObjectKind::kConcept ? preferred_label(object.id) : get_term(object.id).label;
}

std::vector<SynonymHit> StoreState::search_synonyms(const SynonymQuery& query) const {
  const auto trimmed = text::trim(query.label);
  if (trimmed.empty() || !text::is_valid_utf8(trimmed)) invalid("search label must be non-empty UTF-8");
  std::optional<std::string> lang;
  if (query.language) {
    lang = text::normalize_language_tag(*query.language);
    if (!lang) invalid("malformed language tag: " + *query.language);
  }
  const std::string key = text::fold(trimmed);

  // First match per concept; in prefix mode the index order makes that the
  // smallest matching folded synonym.
  std::map<EntityId, EntityId> matched;
  auto collect = [&](const std::map<std::string, std::set<std::pair<EntityId, EntityId>>>& by_lang) {
    for (const auto& [language, pairs] : by_lang) {
      if (lang && language != *lang) continue;
      for (const auto& [concept_id, term] : pairs) {
        auto [it, fresh] = matched.emplace(concept_id, term);
        if (!fresh && query.mode == SearchMode::kExact && get_term(term).label < get_term(it->second).label) {
          it->second = term;
        }
      }
    }
  };

  if (query.mode == SearchMode::kExact) {
    if (auto it = synonym_index_.find(key); it != synonym_index_.end()) collect(it->second);
  } else {
    for (auto it = synonym_index_.lower_bound(key); it != synonym_index_.end() && it->first.starts_with(key); ++it) {
      collect(it->second);
    }
  }

  struct Ranked {
    std::string folded;
    const std::string* label;
    SynonymHit hit;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(matched.size());
  for (const auto& [concept_id, term] : matched) {
    const auto& label = preferred_label(concept_id);
    ranked.push_back({text::fold(label), &label, {concept_id, term}});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return std::tie(a.folded, *a.label, a.hit.concept_id) < std::tie(b.folded, *b.label, b.hit.concept_id);
  });

  std::vector<SynonymHit> out;
  std::size_t begin = 0, end = ranked.size();
  if (query.mode == SearchMode::kPrefix) {
    begin = std::min(query.offset, ranked.size());
    end = std::min(ranked.size(), begin + query.limit);
  }
  for (std::size_t i = begin; i < end; ++i) out.push_back(ranked[i].hit);
  return out;
}

std::vector<EntityId> StoreState::find_by_synonym(const SynonymQuery& query) const {
  std::vector<EntityId> ids;
  for (const auto& hit : search_synonyms(query)) ids.push_back(hit.concept_id);
  return ids;
}

std::vector<Triple> StoreState::triples_about(EntityId concept_id, Role role) const {
  (void)get_concept(concept_id);
  std::set<EntityId> ids;
  if (role != Role::kObject) {
    const auto& s = triples_with_subject(concept_id);
    ids.insert(s.begin(), s.end());
  }
  if (role != Role::kSubject) {
    for (const auto& id : triples_with_object(concept_id)) {
      if (triples_.at(id).object.kind == ObjectKind::kConcept) ids.insert(id);
    }
  }
  std::vector<Triple> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(triples_.at(id));
  std::sort(out.begin(), out.end(), [this](const Triple& a, const Triple& b) {
    const auto& pa = preferred_label(a.predicate);
    const auto& pb = preferred_label(b.predicate);
    if (pa != pb) return pa < pb;
    const auto& oa = label_of(a.object);
    const auto& ob = label_of(b.object);
    if (oa != ob) return oa < ob;
    return a.id < b.id;
  });
  return out;
}

std::vector<Contribution> StoreState::contributions(const std::string& user) const {
  std::vector<Contribution> out;
  auto it = contributions_.find(user);
  if (it == contributions_.end()) return out;
  const auto source = Source::user(user);
  for (const auto& id : it->second) {
    const auto* p = triples_.at(id).find_provenance(source);
    out.push_back({id, p->timestamp});
  }
  std::sort(out.begin(), out.end(), [](const Contribution& a, const Contribution& b) {
    if (a.attributed_at != b.attributed_at) return a.attributed_at > b.attributed_at;
    return a.triple < b.triple;
  });
  return out;
}

const std::set<EntityId>& StoreState::triples_with_subject(EntityId id) const {
  auto it = by_subject_.find(id);
  return it == by_subject_.end() ? kNoIds : it->second;
}

const std::set<EntityId>& StoreState::triples_with_object(EntityId id) const {
  auto it = by_object_.find(id);
  return it == by_object_.end() ? kNoIds : it->second;
}

SynonymIndex StoreState::rebuild_synonym_index() const {
  SynonymIndex index;
  for (const auto& [id, c] : concepts_) {
    for (const auto& s : c.synonyms) {
      const auto& term = terms_.at(s);
      index[text::fold(term.label)][term.language].emplace(id, s);
    }
  }
  return index;
}

std::vector<JournalOp> StoreState::snapshot_ops() const {
  std::vector<JournalOp> ops;
  ops.reserve(types_.size() + terms_.size() + concepts_.size() + triples_.size());
  for (const auto& t : types_) ops.emplace_back(RegisterTypeOp{t});
  for (const auto& [_, term] : terms_) ops.emplace_back(InternTermOp{term});
  for (const auto& [_, c] : concepts_) ops.emplace_back(PutConceptOp{c});
  for (const auto& [_, t] : triples_) {
    ops.emplace_back(AssertTripleOp{t.id, t.subject, t.predicate, t.object, t.provenance});
  }
  return ops;
}

bool operator==(const StoreState& a, const StoreState& b) {
  return a.types_ == b.types_ && a.terms_ == b.terms_ && a.term_index_ == b.term_index_ &&
         a.concepts_ == b.concepts_ && a.triples_ == b.triples_ && a.spo_index_ == b.spo_index_ &&
         a.by_subject_ == b.by_subject_ && a.by_object_ == b.by_object_ && a.synonym_index_ == b.synonym_index_ &&
         a.contributions_ == b.contributions_;
}

std::vector<JournalOp> seed_ops() {
  std::vector<JournalOp> ops;
  for (auto t : semantic_type::kBuiltin) ops.emplace_back(RegisterTypeOp{std::string(t)});

  auto add_concept = [&](EntityId id, std::string_view label, std::string_view type) {
    const auto key = TermKey::make(label, kLangEnglish);
    const Term term{term_id_for(key), key.label, key.language};
    ops.emplace_back(InternTermOp{term});
    Concept c;
    c.id = id;
    c.preferred = term.id;
    c.synonyms = {term.id};
    c.types = {std::string(type)};
    ops.emplace_back(PutConceptOp{std::move(c)});
  };
  for (auto t : semantic_type::kBuiltin) add_concept(semantic_type::concept_id(t), t, semantic_type::kOther);
  for (auto p : predicate::kSeeded) add_concept(predicate::id(p), p, semantic_type::kRelation);
  return ops;
}

}  // namespace cw
