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


#include <benchmark/benchmark.h>

#include <unistd.h>

#include <filesystem>

#include "bench_data.hpp"
#include "cw/import.hpp"

namespace {

namespace fs = std::filesystem;

class Populated : public benchmark::Fixture {
 public:
  void SetUp(const benchmark::State&) override {
    if (store) return;
    dir = fs::temp_directory_path() / ("cw-bench-query-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    store = cw::Store::open(dir);
    const auto doc = cw::enzyme::parse_flat_file(cwbench::synthetic_flat_file(8000), "b").doc;
    cw::import::apply_import(*store, cw::import::plan_import(*store->snapshot(), doc, cw::import::enzyme_authority("b")));
  }

  ~Populated() override {
    store.reset();
    if (!dir.empty()) fs::remove_all(dir);
  }

  fs::path dir;
  std::unique_ptr<cw::Store> store;
};

BENCHMARK_F(Populated, ExactSynonym)(benchmark::State& state) {
  const auto snapshot = store->snapshot();
  cw::SynonymQuery q;
  q.label = "synthetic enzyme number 4321";
  for (auto _ : state) benchmark::DoNotOptimize(snapshot->find_by_synonym(q));
}

BENCHMARK_F(Populated, PrefixSearch)(benchmark::State& state) {
  const auto snapshot = store->snapshot();
  cw::SynonymQuery q;
  q.label = "alternative name 12";
  q.mode = cw::SearchMode::kPrefix;
  for (auto _ : state) benchmark::DoNotOptimize(snapshot->search_synonyms(q));
}

BENCHMARK_F(Populated, TriplesAbout)(benchmark::State& state) {
  const auto snapshot = store->snapshot();
  const auto id = cw::enzyme_concept_id("1.1.1.1");
  for (auto _ : state) benchmark::DoNotOptimize(snapshot->triples_about(id, cw::Role::kAny));
}

BENCHMARK_F(Populated, Snapshot)(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(store->snapshot());
}

}  // namespace

BENCHMARK_MAIN();
