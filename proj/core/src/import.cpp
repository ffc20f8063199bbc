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

#include "cw/import.hpp"

#include <json.hpp>

#include <map>

#include "cw/error.hpp"

namespace cw::import {
namespace {

using Key = std::pair<EntityId, ObjectRef>;  // (predicate, object)

std::string join_ids(const std::vector<EntityId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id.str();
  }
  return out;
}

Assertion term_fact(std::string_view predicate, std::string_view label, std::string_view language) {
  return {std::string(predicate), TermKey::make(label, language)};
}

// Facts `authority` currently supports with `subject` as subject.
std::map<Key, EntityId> supported_facts(const StoreState& state, EntityId subject, const Source& authority) {
  std::map<Key, EntityId> out;
  for (const auto& id : state.triples_with_subject(subject)) {
    const auto& t = state.get_triple(id);
    if (t.is_supported_by(authority)) out.emplace(Key{t.predicate, t.object}, id);
  }
  return out;
}

}  // namespace

EntityId Assertion::predicate_id() const { return predicate::id(predicate); }

ObjectRef Assertion::object_ref() const {
  if (const auto* id = std::get_if<EntityId>(&object)) return ObjectRef::to_concept(*id);
  return ObjectRef::to_term(term_id_for(std::get<TermKey>(object)));
}

ObjectSpec Assertion::object_spec() const {
  if (const auto* id = std::get_if<EntityId>(&object)) return ObjectRef::to_concept(*id);
  return std::get<TermKey>(object);
}

AssertionSet derive_assertions(const enzyme::Record& r) {
  AssertionSet out;
  out.insert(term_fact(predicate::kHasSynonym, r.ec, kLangNone));
  if (r.status == enzyme::Status::kTransferred) {
    for (const auto& t : r.transferred_to) out.insert(term_fact(predicate::kTransferredTo, t, kLangNone));
    return out;
  }
  if (r.status == enzyme::Status::kDeleted) return out;

  if (r.recommended_name) out.insert(term_fact(predicate::kHasSynonym, *r.recommended_name, kLangEnglish));
  for (const auto& a : r.alt_names) out.insert(term_fact(predicate::kHasSynonym, a, kLangEnglish));
  for (const auto& a : r.activities) out.insert(term_fact(predicate::kHasCatalyticActivity, a, kLangEnglish));
  for (const auto& c : r.cofactors) out.insert(term_fact(predicate::kHasCofactor, c, kLangEnglish));
  for (const auto& c : r.comments) out.insert(term_fact(predicate::kHasComment, c, kLangEnglish));
  for (const auto& x : r.cross_refs) {
    out.insert(term_fact(predicate::kHasCrossReference, x.database + ":" + x.accession, kLangNone));
  }
  out.insert({std::string(predicate::kHasSemanticType), semantic_type::concept_id(semantic_type::kEnzyme)});
  return out;
}

AmbiguousMatch::AmbiguousMatch(std::string ec, std::vector<EntityId> ids)
    : std::runtime_error("EC " + ec + " is a synonym of several concepts: " + join_ids(ids)),
      ec_(std::move(ec)),
      ids_(std::move(ids)) {}

std::optional<EntityId> match_concept(const StoreState& state, std::string_view ec) {
  SynonymQuery q;
  q.label = std::string(ec);
  q.language = std::string(kLangNone);
  auto ids = state.find_by_synonym(q);
  if (ids.empty()) {
    q.language.reset();
    ids = state.find_by_synonym(q);
  }
  if (ids.empty()) return std::nullopt;
  if (ids.size() > 1) {
    std::sort(ids.begin(), ids.end());
    throw AmbiguousMatch(std::string(ec), std::move(ids));
  }
  return ids.front();
}

std::string to_json(const ImportReport& r) {
  nlohmann::ordered_json j;
  j["concepts_created"] = r.concepts_created;
  j["concepts_matched"] = r.concepts_matched;
  j["flags_added"] = r.flags_added;
  j["flags_withdrawn"] = r.flags_withdrawn;
  j["unchanged"] = r.unchanged;
  j["ambiguous_ecs"] = r.ambiguous_ecs;
  j["errors"] = r.errors;
  return j.dump();
}

ImportPlan plan_import(const StoreState& state, const enzyme::Document& doc, const Source& authority,
                       const PlanOptions& options) {
  ImportPlan plan;
  plan.authority = authority;
  plan.base_revision = state.revision();
  auto& report = plan.report;
  report.errors = options.upstream_errors;

  std::set<EntityId> covered;    // concepts reconciled by some record
  std::set<EntityId> protected_; // concepts the sweep must leave alone

  for (const auto& ec : options.skipped_ecs) {
    try {
      if (auto id = match_concept(state, ec)) protected_.insert(*id);
    } catch (const AmbiguousMatch& e) {
      protected_.insert(e.ids().begin(), e.ids().end());
    }
  }

  for (const auto& record : doc.records) {
    std::vector<Action> actions;
    std::size_t added = 0, withdrawn = 0;
    try {
      if (auto problem = enzyme::check_record(record)) throw Error(ErrorCode::kInvalidArgument, *problem);
      const auto derived = derive_assertions(record);
      const auto match = match_concept(state, record.ec);
      const EntityId concept_id = match ? *match : enzyme_concept_id(record.ec);

      std::map<Key, EntityId> current;
      if (match) {
        current = supported_facts(state, concept_id, authority);
      } else {
        if (state.find_concept(concept_id) != nullptr) {
          throw Error(ErrorCode::kConflict, "concept " + concept_id.str() + " exists without EC synonym " + record.ec);
        }
        ConceptSpec spec;
        spec.id = concept_id;
        spec.preferred = record.recommended_name ? TermKey::make(*record.recommended_name, kLangEnglish)
                                                 : TermKey::make(record.ec, kLangNone);
        spec.synonyms.push_back(TermKey::make(record.ec, kLangNone));
        spec.types.insert(std::string(semantic_type::kEnzyme));
        actions.emplace_back(CreateConcept{record.ec, std::move(spec)});
      }

      std::set<Key> derived_keys;
      MarkTransferred transfer{concept_id, {}};
      for (const auto& a : derived) {
        const Key key{a.predicate_id(), a.object_ref()};
        derived_keys.insert(key);
        if (current.contains(key)) continue;
        if (a.predicate == predicate::kTransferredTo) {
          transfer.targets.push_back(std::get<TermKey>(a.object).label);
        } else {
          actions.emplace_back(AssertSupported{concept_id, a});
        }
        ++added;
      }
      if (!transfer.targets.empty()) actions.emplace_back(std::move(transfer));
      for (const auto& [key, triple] : current) {
        if (derived_keys.contains(key)) continue;
        actions.emplace_back(Withdraw{concept_id, triple});
        ++withdrawn;
      }

      covered.insert(concept_id);
      if (match) {
        ++report.concepts_matched;
        if (actions.empty()) ++report.unchanged;
      } else {
        ++report.concepts_created;
      }
    } catch (const AmbiguousMatch& e) {
      report.ambiguous_ecs.push_back(record.ec);
      protected_.insert(e.ids().begin(), e.ids().end());
      continue;
    } catch (const Error& e) {
      report.errors.push_back(record.ec + ": " + e.what());
      if (auto id = match_concept(state, record.ec)) protected_.insert(*id);
      continue;
    }
    report.flags_added += added;
    report.flags_withdrawn += withdrawn;
    for (auto& a : actions) plan.actions.push_back(std::move(a));
  }

  // Sweep: ENZYME no longer lists these concepts at all.
  for (const auto& [id, triple] : state.triples()) {
    if (covered.contains(triple.subject) || protected_.contains(triple.subject)) continue;
    if (!triple.is_supported_by(authority)) continue;
    plan.actions.emplace_back(Withdraw{triple.subject, id});
    ++report.flags_withdrawn;
  }
  return plan;
}

ImportReport apply_import(Store& store, const ImportPlan& plan) {
  store.batch(
      [&](Batch& batch) {
        for (const auto& action : plan.actions) {
          std::visit(
              [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, CreateConcept>) {
                  batch.put_concept(a.spec);
                } else if constexpr (std::is_same_v<T, AssertSupported>) {
                  batch.assert_triple(a.concept_id, a.assertion.predicate_id(), a.assertion.object_spec(), plan.authority);
                } else if constexpr (std::is_same_v<T, Withdraw>) {
                  batch.withdraw_provenance(a.triple, plan.authority);
                } else {
                  for (const auto& target : a.targets) {
                    batch.assert_triple(a.concept_id, predicate::id(predicate::kTransferredTo),
                                        TermKey::make(target, kLangNone), plan.authority);
                  }
                }
              },
              action);
        }
      },
      plan.base_revision);
  return plan.report;
}

}  // namespace cw::import
