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
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cw::enzyme {

enum class Status { kActive, kDeleted, kTransferred };

std::string_view to_string(Status status);
std::optional<Status> parse_status(std::string_view text);

struct CrossRef {
  std::string database;  // "SwissProt" or "PROSITE"
  std::string accession;
  std::string entry_name;  // empty for PROSITE

  friend auto operator<=>(const CrossRef&, const CrossRef&) = default;
};

inline constexpr std::string_view kSwissProt = "SwissProt";
inline constexpr std::string_view kProsite = "PROSITE";

/// One ENZYME entry.
struct Record {
  std::string ec;
  Status status = Status::kActive;
  std::vector<std::string> transferred_to;
  std::optional<std::string> recommended_name;
  std::vector<std::string> alt_names;
  std::vector<std::string> activities;
  std::vector<std::string> cofactors;
  std::vector<std::string> comments;
  std::vector<CrossRef> cross_refs;

  friend bool operator==(const Record&, const Record&) = default;
};

/// Records of one source file version, unique by EC number.
struct Document {
  std::string release;
  std::vector<Record> records;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Returns a description of the first violated record invariant, if any.
std::optional<std::string> check_record(const Record& record);

struct Warning {
  std::size_t line = 0;
  std::string message;
};

/// A record that could not be parsed; parsing continued past it.
struct RecordError {
  std::size_t line = 0;
  std::string ec;  // as written on the ID line (may be invalid)
  std::string message;
};

struct ParseResult {
  Document doc;
  std::vector<Warning> warnings;
  std::vector<RecordError> errors;
};

/// Unrecoverable input problem (currently: ill-formed UTF-8).
class FatalParseError : public std::runtime_error {
 public:
  FatalParseError(std::size_t byte_offset, const std::string& what)
      : std::runtime_error(what), byte_offset_(byte_offset) {}
  [[nodiscard]] std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Parses the line-coded ENZYME flat file (enzyme.dat).
ParseResult parse_flat_file(std::string_view data, std::string release);
ParseResult parse_flat_file(std::istream& in, std::string release);

/// Splits joined CA text into numbered reactions when it starts with
/// "(1) "; markers must appear in sequence. Text without markers is one
/// activity.
std::vector<std::string> split_activities(std::string_view joined);

/// Splits CF text on ';' and on the word "or".
std::vector<std::string> split_cofactors(std::string_view joined);

/// EC numbers mentioned in "Transferred entry: ..." text.
std::vector<std::string> extract_ec_numbers(std::string_view text);

// --- XML intermediate ------------------------------------------------------

/// Byte-deterministic XML rendering (UTF-8, 2-space indent).
std::string records_to_xml(const Document& doc);

class XmlSchemaError : public std::runtime_error {
 public:
  XmlSchemaError(std::string path, std::size_t line, const std::string& message)
      : std::runtime_error(path + " (line " + std::to_string(line) + "): " + message),
        path_(std::move(path)),
        line_(line) {}

  /// e.g. "/enzymeImport/enzyme[1]@ec"
  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Parses and validates the XML intermediate. Throws XmlSchemaError for
/// malformed XML, schema violations, invalid records and duplicate ECs.
Document xml_to_records(std::string_view xml);

}  // namespace cw::enzyme
