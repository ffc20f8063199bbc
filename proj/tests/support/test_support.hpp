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

#include <atomic>
#include <filesystem>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cw/enzyme.hpp"
#include "cw/import.hpp"
#include "cw/store.hpp"

namespace cwtest {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path fixture(const std::string& name);
std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& data);

/// Clock that advances one second per call, starting at `start`.
cw::StoreOptions stepping_clock(cw::Timestamp start = cw::Timestamp(std::chrono::seconds(1'790'000'000)));

/// Flat file -> XML -> records -> plan -> apply, as the import command does.
cw::import::ImportReport import_flat(cw::Store& store, const std::string& flat, const std::string& release);

// --- random data ------------------------------------------------------------

using Rng = std::mt19937_64;

/// Non-empty, trimmed text without control characters, mixing XML markup
/// characters, quotes and non-ASCII code points.
std::string hostile_text(Rng& rng, bool allow_trailing_period = false);

cw::enzyme::Record random_record(Rng& rng, const std::string& ec);

/// `n` records with distinct ECs drawn from 1.1.1.1 .. 1.1.1.<pool>.
cw::enzyme::Document random_document(Rng& rng, std::size_t n, std::size_t pool, const std::string& release);

// --- oracles ----------------------------------------------------------------

/// (predicate name, object) with object = "c:<uuid>" or "t:<lang>:<label>".
using Fact = std::pair<std::string, std::string>;

/// The rule table, written out independently of the import engine.
std::set<Fact> oracle_facts(const cw::enzyme::Record& record);

/// (subject, predicate name, object) as Fact-style strings.
using SubjectFact = std::tuple<cw::EntityId, std::string, std::string>;

/// Everything `authority_name` currently supports, read by scanning triples.
std::set<SubjectFact> supported_by(const cw::StoreState& state, const std::string& authority_name);

/// Expected support set: oracle_facts of every record, attached to the
/// concept that holds the record's EC as a "zxx" synonym (scan, no index).
std::set<SubjectFact> expected_support(const cw::StoreState& state, const cw::enzyme::Document& doc);

}  // namespace cwtest
