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


#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "cw/error.hpp"
#include "cw/store.hpp"
#include "test_support.hpp"

namespace {

using namespace cw;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no cw::Error thrown";
  return ErrorCode::kIo;
}

std::size_t line_count(const std::filesystem::path& p) {
  const auto text = cwtest::read_file(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override { store = Store::open(dir.path(), cwtest::stepping_clock()); }

  void reopen() {
    store.reset();
    store = Store::open(dir.path(), cwtest::stepping_clock(Timestamp(std::chrono::seconds(1'800'000'000))));
  }

  EntityId make_concept(const std::string& label, const std::string& type = "Other", std::vector<TermKey> synonyms = {}) {
    ConceptSpec spec;
    spec.preferred = TermKey::make(label);
    spec.types = {type};
    spec.synonyms = std::move(synonyms);
    return store->put_concept(spec);
  }

  cwtest::TempDir dir;
  std::unique_ptr<Store> store;
  const EntityId has_synonym = predicate::id(predicate::kHasSynonym);
  const EntityId has_function = predicate::id(predicate::kHasFunction);
};

TEST_F(StoreTest, FreshStoreIsSeeded) {
  const auto s = store->snapshot();
  EXPECT_EQ(store->revision(), 36u);
  EXPECT_EQ(line_count(store->journal_path()), 36u);
  EXPECT_EQ(s->types().size(), 6u);
  EXPECT_EQ(s->concepts().size(), 15u);
  EXPECT_TRUE(s->triples().empty());
  for (auto p : predicate::kSeeded) {
    EXPECT_TRUE(s->is_relation(predicate::id(p))) << p;
    EXPECT_EQ(s->preferred_label(predicate::id(p)), p);
  }
  EXPECT_EQ(s->preferred_label(semantic_type::concept_id("Enzyme")), "Enzyme");
}

TEST_F(StoreTest, ReopenReplaysToEqualState) {
  const auto a = make_concept("sorbitol biosynthetic process", "Biological Process");
  store->assert_triple(a, has_synonym, TermKey::make("sorbitol synthesis"), Source::user("u"));
  const auto before = store->snapshot();
  reopen();
  EXPECT_EQ(*store->snapshot(), *before);
  EXPECT_EQ(store->revision(), before->revision());
}

TEST_F(StoreTest, MissingDirectoryIsAnIoError) {
  EXPECT_EQ(code_of([&] { Store::open(dir.path() / "nope"); }), ErrorCode::kIo);
}

TEST_F(StoreTest, PutConceptValidates) {
  ConceptSpec spec;
  spec.preferred = TermKey::make("x");
  EXPECT_EQ(code_of([&] { store->put_concept(spec); }), ErrorCode::kInvalidArgument) << "no types";
  spec.types = {"Unregistered"};
  EXPECT_EQ(code_of([&] { store->put_concept(spec); }), ErrorCode::kInvalidArgument);
  spec.types = {"Chemical"};
  const auto id = store->put_concept(spec);
  EXPECT_EQ(id.version(), 4);
  const auto& c = store->snapshot()->get_concept(id);
  EXPECT_TRUE(c.synonyms.contains(c.preferred));
}

TEST_F(StoreTest, RePutIsIdempotentOrConflicts) {
  ConceptSpec spec;
  spec.id = EntityId::derived("test", "c1");
  spec.preferred = TermKey::make("alpha");
  spec.synonyms = {TermKey::make("beta")};
  spec.types = {"Chemical"};
  store->put_concept(spec);
  const auto rev = store->revision();
  store->put_concept(spec);
  EXPECT_EQ(store->revision(), rev) << "identical re-put writes nothing";
  spec.definition = "changed";
  EXPECT_EQ(code_of([&] { store->put_concept(spec); }), ErrorCode::kConflict);
}

TEST_F(StoreTest, TwoIdenticalConceptsGetDistinctIds) {
  EXPECT_NE(make_concept("same"), make_concept("same"));
}

TEST_F(StoreTest, EcSynonymsAreUniquePerStore) {
  const auto a = make_concept("Alcohol dehydrogenase", "Enzyme", {TermKey::make("1.1.1.1", "zxx")});
  ConceptSpec spec;
  spec.preferred = TermKey::make("Other thing");
  spec.synonyms = {TermKey::make("1.1.1.1", "zxx")};
  spec.types = {"Enzyme"};
  EXPECT_EQ(code_of([&] { store->put_concept(spec); }), ErrorCode::kEcSynonymTaken);
  const auto b = make_concept("Other thing", "Enzyme");
  EXPECT_EQ(code_of([&] { store->assert_triple(b, has_synonym, TermKey::make("1.1.1.1", "zxx"), Source::user("u")); }),
            ErrorCode::kEcSynonymTaken);
  // Ordinary words may be shared.
  store->assert_triple(a, has_synonym, TermKey::make("ADH"), Source::user("u"));
  store->assert_triple(b, has_synonym, TermKey::make("ADH"), Source::user("u"));
  SynonymQuery q{"adh", std::nullopt, SearchMode::kExact};
  EXPECT_EQ(store->snapshot()->find_by_synonym(q).size(), 2u);
}

TEST_F(StoreTest, AssertTripleMergesBySource) {
  const auto a = make_concept("Aldehyde reductase", "Enzyme");
  const auto b = make_concept("sorbitol biosynthetic process", "Biological Process");
  auto r1 = store->assert_triple(a, has_function, ObjectRef::to_concept(b), Source::user("alice"));
  EXPECT_TRUE(r1.created);
  EXPECT_EQ(r1.triple.id, triple_id_for(a, has_function, ObjectRef::to_concept(b)));
  auto r2 = store->assert_triple(a, has_function, ObjectRef::to_concept(b), Source::user("alice"));
  EXPECT_FALSE(r2.created);
  EXPECT_EQ(r2.triple.id, r1.triple.id);
  ASSERT_EQ(r2.triple.provenance.size(), 1u);
  EXPECT_GT(r2.triple.provenance[0].timestamp, r1.triple.provenance[0].timestamp) << "timestamp refreshed";
  auto r3 = store->assert_triple(a, has_function, ObjectRef::to_concept(b), Source::user("bob"));
  EXPECT_EQ(r3.triple.provenance.size(), 2u);
  EXPECT_EQ(store->snapshot()->triples().size(), 1u);
}

TEST_F(StoreTest, AssertTripleErrors) {
  const auto a = make_concept("a", "Enzyme");
  const auto unknown = EntityId::random();
  EXPECT_EQ(code_of([&] { store->assert_triple(unknown, has_function, ObjectRef::to_concept(a), Source::user("u")); }),
            ErrorCode::kUnknownConcept);
  EXPECT_EQ(code_of([&] { store->assert_triple(a, unknown, ObjectRef::to_concept(a), Source::user("u")); }),
            ErrorCode::kUnknownConcept);
  EXPECT_EQ(code_of([&] { store->assert_triple(a, has_function, ObjectRef::to_concept(unknown), Source::user("u")); }),
            ErrorCode::kUnknownConcept);
  EXPECT_EQ(code_of([&] { store->assert_triple(a, has_function, ObjectRef::to_term(unknown), Source::user("u")); }),
            ErrorCode::kUnknownTerm);
  EXPECT_EQ(code_of([&] { store->assert_triple(a, a, ObjectRef::to_concept(a), Source::user("u")); }),
            ErrorCode::kInvalidPredicate);
  EXPECT_EQ(code_of([&] { store->assert_triple(a, has_function, ObjectRef::to_concept(a), Source::user(" ")); }),
            ErrorCode::kInvalidArgument);
}

TEST_F(StoreTest, SynonymTriplesExtendSearchAndSurviveWithdrawal) {
  const auto a = make_concept("Alcohol dehydrogenase", "Enzyme");
  const auto src = Source::authority("ENZYME", "r1");
  const auto r = store->assert_triple(a, has_synonym, TermKey::make("Aldehyde reductase"), src);
  SynonymQuery q{"ALDEHYDE REDUCTASE", std::nullopt, SearchMode::kExact};
  EXPECT_EQ(store->snapshot()->find_by_synonym(q), std::vector<EntityId>{a});

  auto w = store->withdraw_provenance(r.triple.id, src);
  EXPECT_TRUE(w.changed);
  EXPECT_EQ(w.triple.provenance[0].status, ProvenanceStatus::kWithdrawn);
  EXPECT_FALSE(store->withdraw_provenance(r.triple.id, src).changed);
  EXPECT_FALSE(store->withdraw_provenance(r.triple.id, Source::user("nobody")).changed);
  EXPECT_NE(store->snapshot()->find_triple(r.triple.id), nullptr) << "withdrawal never deletes";
  EXPECT_EQ(store->snapshot()->find_by_synonym(q), std::vector<EntityId>{a});

  // Re-assertion flips the entry back and records the new release.
  auto again = store->assert_triple(a, has_synonym, TermKey::make("Aldehyde reductase"), Source::authority("ENZYME", "r2"));
  EXPECT_EQ(again.triple.provenance[0].status, ProvenanceStatus::kSupported);
  EXPECT_EQ(again.triple.provenance[0].source.release, "r2");
}

TEST_F(StoreTest, PrefixSearchIsOrderedAndPaged) {
  const auto b = make_concept("beta reductase", "Enzyme");
  const auto a = make_concept("Alpha reductase", "Enzyme");
  const auto c = make_concept("gamma", "Enzyme", {TermKey::make("reductase-like", "en")});
  (void)c;
  make_concept("unrelated", "Enzyme");
  const auto s = store->snapshot();
  SynonymQuery q{"red", std::nullopt, SearchMode::kPrefix, 20, 0};
  EXPECT_EQ(s->find_by_synonym(q), std::vector<EntityId>{c});
  q.label = "AL";
  EXPECT_EQ(s->find_by_synonym(q), std::vector<EntityId>{a});
  store->assert_triple(b, has_synonym, TermKey::make("reductase B"), Source::user("u"));
  store->assert_triple(a, has_synonym, TermKey::make("reductase A"), Source::user("u"));
  const auto s2 = store->snapshot();
  q.label = "reductase";
  EXPECT_EQ(s2->find_by_synonym(q), (std::vector<EntityId>{a, b, c}));
  q.limit = 1;
  q.offset = 1;
  EXPECT_EQ(s2->find_by_synonym(q), std::vector<EntityId>{b});
  q.language = "de";
  q.offset = 0;
  EXPECT_TRUE(s2->find_by_synonym(q).empty());
}

TEST_F(StoreTest, ContributionsNewestFirst) {
  const auto a = make_concept("a", "Enzyme");
  const auto b = make_concept("b", "Other");
  const auto c = make_concept("c", "Other");
  const auto t1 = store->assert_triple(a, has_function, ObjectRef::to_concept(b), Source::user("alice")).triple.id;
  const auto t2 = store->assert_triple(a, has_function, ObjectRef::to_concept(c), Source::user("alice")).triple.id;
  store->assert_triple(a, has_function, ObjectRef::to_concept(c), Source::user("bob"));
  auto list = store->snapshot()->contributions("alice");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0].triple, t2);
  EXPECT_EQ(list[1].triple, t1);
  store->assert_triple(a, has_function, ObjectRef::to_concept(b), Source::user("alice"));
  list = store->snapshot()->contributions("alice");
  EXPECT_EQ(list[0].triple, t1) << "re-assertion refreshes the attribution time";
  EXPECT_TRUE(store->snapshot()->contributions("carol").empty());
}

TEST_F(StoreTest, TriplesAboutOrdering) {
  const auto a = make_concept("a", "Enzyme");
  const auto z = make_concept("zeta", "Other");
  const auto m = make_concept("mu", "Other");
  store->assert_triple(a, has_function, ObjectRef::to_concept(z), Source::user("u"));
  store->assert_triple(a, has_function, ObjectRef::to_concept(m), Source::user("u"));
  store->assert_triple(a, has_synonym, TermKey::make("alpha"), Source::user("u"));
  store->assert_triple(m, has_function, ObjectRef::to_concept(a), Source::user("u"));
  const auto s = store->snapshot();
  const auto all = s->triples_about(a, Role::kAny);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[0].object.id, a);  // "has function" / "a"
  EXPECT_EQ(all[1].object.id, m);
  EXPECT_EQ(all[2].object.id, z);
  EXPECT_EQ(all[3].predicate, has_synonym);
  EXPECT_EQ(s->triples_about(a, Role::kSubject).size(), 3u);
  EXPECT_EQ(s->triples_about(a, Role::kObject).size(), 1u);
}

TEST_F(StoreTest, BatchIsAllOrNothing) {
  const auto rev = store->revision();
  const auto lines = line_count(store->journal_path());
  EXPECT_THROW(store->batch([&](Batch& b) {
    ConceptSpec spec;
    spec.preferred = TermKey::make("staged");
    spec.types = {"Other"};
    b.put_concept(spec);
    EXPECT_GE(b.pending(), 2u);
    throw std::runtime_error("abort");
  }),
               std::runtime_error);
  EXPECT_EQ(store->revision(), rev);
  EXPECT_EQ(line_count(store->journal_path()), lines);
  SynonymQuery q{"staged", std::nullopt, SearchMode::kExact};
  EXPECT_TRUE(store->snapshot()->find_by_synonym(q).empty());

  store->batch([&](Batch& b) {
    ConceptSpec spec;
    spec.preferred = TermKey::make("staged");
    spec.types = {"Other"};
    const auto id = b.put_concept(spec);
    b.assert_triple(id, has_synonym, TermKey::make("staged 2"), Source::user("u"));
  });
  EXPECT_EQ(store->snapshot()->find_by_synonym(q).size(), 1u);
  EXPECT_EQ(line_count(store->journal_path()), store->revision());
}

TEST_F(StoreTest, StaleBatchIsRejected) {
  const auto rev = store->revision();
  make_concept("moves the revision");
  EXPECT_EQ(code_of([&] { store->batch([](Batch&) {}, rev); }), ErrorCode::kStalePlan);
}

TEST_F(StoreTest, SnapshotsAreImmutable) {
  const auto a = make_concept("a", "Enzyme");
  const auto before = store->snapshot();
  const auto copy = *before;
  store->assert_triple(a, has_synonym, TermKey::make("later"), Source::user("u"));
  EXPECT_EQ(*before, copy);
  EXPECT_EQ(before->revision(), copy.revision());
  EXPECT_NE(store->snapshot()->revision(), before->revision());
}

TEST_F(StoreTest, CompactionPreservesState) {
  const auto a = make_concept("a", "Enzyme");
  for (int i = 0; i < 20; ++i) {
    store->assert_triple(a, has_synonym, TermKey::make("s" + std::to_string(i % 5)), Source::user("u"));
  }
  const auto before = store->snapshot();
  const auto lines_before = line_count(store->journal_path());
  store->compact();
  EXPECT_LT(line_count(store->journal_path()), lines_before);
  EXPECT_EQ(store->revision(), line_count(store->journal_path()));
  reopen();
  EXPECT_EQ(*store->snapshot(), *before);
  store->assert_triple(a, has_synonym, TermKey::make("after compaction"), Source::user("u"));
  reopen();
  EXPECT_EQ(store->snapshot()->triples().size(), 6u);
}

TEST_F(StoreTest, CorruptJournalReportsLine) {
  store.reset();
  auto text = cwtest::read_file(dir.path() / kJournalFileName);
  const auto third = text.find('\n', text.find('\n') + 1) + 1;
  text.insert(third, "{not json}\n");
  cwtest::write_file(dir.path() / kJournalFileName, text);
  try {
    Store::open(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptJournal);
    EXPECT_NE(std::string(e.what()).find("journal.cwj:3"), std::string::npos) << e.what();
  }
}

TEST_F(StoreTest, ReadersProceedDuringWrites) {
  const auto a = make_concept("a", "Enzyme");
  std::atomic<bool> done{false};
  std::atomic<long> reads{0};
  std::thread reader([&] {
    std::uint64_t last = 0;
    while (!done) {
      const auto s = store->snapshot();
      EXPECT_GE(s->revision(), last);
      last = s->revision();
      // Index and content agree inside one snapshot.
      EXPECT_EQ(s->synonym_index(), s->rebuild_synonym_index());
      ++reads;
    }
  });
  while (reads == 0) std::this_thread::yield();
  for (int i = 0; i < 50; ++i) store->assert_triple(a, has_synonym, TermKey::make("n" + std::to_string(i)), Source::user("u"));
  done = true;
  reader.join();
  EXPECT_GT(reads.load(), 0);
}

}  // namespace
