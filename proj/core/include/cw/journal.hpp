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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cw/model.hpp"

namespace cw {

// Journal operations. Each maps to one `op` tag in journal.cwj.

struct RegisterTypeOp {  // type.register
  std::string label;
  friend bool operator==(const RegisterTypeOp&, const RegisterTypeOp&) = default;
};

struct InternTermOp {  // term.intern
  Term term;
  friend bool operator==(const InternTermOp&, const InternTermOp&) = default;
};

struct PutConceptOp {  // concept.put
  Concept concept_value;
  friend bool operator==(const PutConceptOp&, const PutConceptOp&) = default;
};

/// triple.assert: creates the triple if absent and merges every listed
/// provenance entry (replacing entries with the same source identity).
struct AssertTripleOp {
  EntityId id;
  EntityId subject;
  EntityId predicate;
  ObjectRef object;
  std::vector<Provenance> provenance;
  friend bool operator==(const AssertTripleOp&, const AssertTripleOp&) = default;
};

struct WithdrawTripleOp {  // triple.withdraw
  EntityId triple;
  Source source;
  Timestamp timestamp{};
  friend bool operator==(const WithdrawTripleOp&, const WithdrawTripleOp&) = default;
};

using JournalOp = std::variant<RegisterTypeOp, InternTermOp, PutConceptOp, AssertTripleOp, WithdrawTripleOp>;

std::string_view op_tag(const JournalOp& op);

struct JournalEntry {
  std::uint64_t seq = 0;
  Timestamp timestamp{};
  JournalOp op;
  friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

/// One JSON object terminated by '\n'.
std::string encode_entry(const JournalEntry& entry);

/// Parses one line (without the trailing newline). Throws cw::Error
/// (kCorruptJournal) describing the problem.
JournalEntry decode_entry(std::string_view line);

inline constexpr std::string_view kJournalFileName = "journal.cwj";

struct JournalLoad {
  std::vector<JournalEntry> entries;
  std::vector<std::string> warnings;
  std::uintmax_t truncated_bytes = 0;
};

/// Append-only line journal. Entries are written with one write() per
/// batch; a crash can only leave a partial final line, which load()
/// truncates away.
class JournalFile {
 public:
  explicit JournalFile(std::filesystem::path path);
  ~JournalFile();
  JournalFile(const JournalFile&) = delete;
  JournalFile& operator=(const JournalFile&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] bool exists() const;

  /// Reads and validates every complete line. Malformed complete lines
  /// throw kCorruptJournal with the 1-based line number; a partial trailing
  /// line is truncated from the file and reported as a warning.
  JournalLoad load();

  void append(std::span<const JournalEntry> entries);
  void sync();

  /// Writes `entries` to a sibling temp file, syncs it and renames it over
  /// the journal. On failure the old journal is left untouched.
  void replace(std::span<const JournalEntry> entries);

 private:
  void open_for_append();
  void close_fd();

  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace cw
