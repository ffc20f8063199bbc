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

// ENZYME flat-file grammar: every line is a two-letter code, three spaces
// and content. An entry runs from "ID" to "//". Lines before the first
// "ID" form the release banner and are skipped.

#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>

#include "cw/ec_number.hpp"
#include "cw/enzyme.hpp"
#include "cw/text.hpp"

namespace cw::enzyme {
namespace {

std::string strip_trailing_periods(std::string_view s) {
  s = text::trim(s);
  while (!s.empty() && s.back() == '.') {
    s.remove_suffix(1);
    s = text::trim(s);
  }
  return std::string(s);
}

void append_joined(std::string& acc, std::string_view piece) {
  if (piece.empty()) return;
  if (!acc.empty()) acc.push_back(' ');
  acc.append(piece);
}

template <class T>
std::vector<T> dedupe(std::vector<T> items) {
  std::vector<T> out;
  std::set<T> seen;
  for (auto& item : items) {
    if (seen.insert(item).second) out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::string> dedupe_nonempty(std::vector<std::string> items) {
  std::erase_if(items, [](const std::string& s) { return s.empty(); });
  return dedupe(std::move(items));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.emplace_back(text::trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

struct RawEntry {
  std::size_t line = 0;
  std::string ec;
  std::string description;
  std::vector<std::string> alt_names;
  bool alt_open = false;  // last AN line did not end with '.'
  std::string activity_text;
  std::string cofactor_text;
  std::vector<std::string> comments;
  std::vector<CrossRef> cross_refs;
};

class FlatFileParser {
 public:
  explicit FlatFileParser(std::string release) { result_.doc.release = std::move(release); }

  void feed(std::string_view line, std::size_t line_no) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view code = line.substr(0, 2);
    const std::string_view content = line.size() > 2 ? text::trim(line.substr(2)) : std::string_view{};

    if (!seen_id_ && code != "ID") {
      ++header_lines_;
      return;
    }
    if (code == "ID") {
      start_entry(content, line_no);
      return;
    }
    if (code == "//") {
      finish_entry();
      return;
    }
    if (skipping_) return;
    if (!entry_) {
      if (!text::trim(line).empty()) {
        result_.warnings.push_back({line_no, "line outside of an entry ignored: " + std::string(line)});
      }
      return;
    }
    handle_field(code, content, line, line_no);
  }

  ParseResult finish() {
    if (header_lines_ > 0) {
      result_.warnings.insert(result_.warnings.begin(),
                              Warning{1, "skipped " + std::to_string(header_lines_) + " header line(s) before the first ID"});
    }
    if (entry_) {
      result_.errors.push_back({entry_->line, entry_->ec, "entry " + entry_->ec + " is not terminated by '//'"});
      entry_.reset();
    } else if (skipping_) {
      result_.errors.push_back({skip_line_, skip_ec_, "entry '" + skip_ec_ + "' is not terminated by '//'"});
    }
    return std::move(result_);
  }

 private:
  void start_entry(std::string_view ec, std::size_t line_no) {
    seen_id_ = true;
    if (entry_) {
      result_.errors.push_back({entry_->line, entry_->ec, "entry " + entry_->ec + " is not terminated by '//'"});
      entry_.reset();
    }
    if (!validate_ec(ec)) {
      // The whole block is dropped; the invalid ID itself is the error.
      result_.errors.push_back({line_no, std::string(ec), "invalid EC number '" + std::string(ec) + "' on ID line"});
      skipping_ = true;
      skip_ec_ = std::string(ec);
      skip_line_ = line_no;
      return;
    }
    skipping_ = false;
    entry_.emplace();
    entry_->line = line_no;
    entry_->ec = std::string(ec);
  }

  void handle_field(std::string_view code, std::string_view content, std::string_view line, std::size_t line_no) {
    auto& e = *entry_;
    if (code == "DE") {
      append_joined(e.description, content);
    } else if (code == "AN") {
      if (e.alt_open && !e.alt_names.empty()) {
        append_joined(e.alt_names.back(), content);
      } else {
        e.alt_names.emplace_back(content);
      }
      e.alt_open = !content.empty() && content.back() != '.';
    } else if (code == "CA") {
      append_joined(e.activity_text, content);
    } else if (code == "CF") {
      append_joined(e.cofactor_text, content);
    } else if (code == "CC") {
      if (content.starts_with("-!-")) {
        e.comments.emplace_back(text::trim(content.substr(3)));
      } else if (!content.empty()) {
        if (e.comments.empty()) e.comments.emplace_back();
        append_joined(e.comments.back(), content);
      }
    } else if (code == "PR") {
      const auto parts = split(content, ';');
      if (parts.size() >= 2 && parts[0] == kProsite && !parts[1].empty()) {
        e.cross_refs.push_back({std::string(kProsite), parts[1], ""});
      } else {
        result_.warnings.push_back({line_no, "unrecognized PR line ignored: " + std::string(line)});
      }
    } else if (code == "DR") {
      for (const auto& item : split(content, ';')) {
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos) {
          result_.warnings.push_back({line_no, "DR item without entry name ignored: " + item});
          continue;
        }
        e.cross_refs.push_back({std::string(kSwissProt), std::string(text::trim(std::string_view(item).substr(0, comma))),
                                std::string(text::trim(std::string_view(item).substr(comma + 1)))});
      }
    } else {
      result_.warnings.push_back({line_no, "unknown line code '" + std::string(code) + "' ignored: " + std::string(line)});
    }
  }

  void finish_entry() {
    if (skipping_) {
      skipping_ = false;
      return;
    }
    if (!entry_) return;
    RawEntry raw = std::move(*entry_);
    entry_.reset();

    Record r;
    r.ec = raw.ec;
    const std::string description = strip_trailing_periods(raw.description);
    constexpr std::string_view kTransferred = "Transferred entry:";
    if (description == "Deleted entry") {
      r.status = Status::kDeleted;
    } else if (description.starts_with(kTransferred)) {
      r.status = Status::kTransferred;
      r.transferred_to = extract_ec_numbers(std::string_view(description).substr(kTransferred.size()));
    } else if (!description.empty()) {
      r.recommended_name = description;
    }

    for (auto& name : raw.alt_names) name = strip_trailing_periods(name);
    r.alt_names = dedupe_nonempty(std::move(raw.alt_names));
    r.activities = dedupe_nonempty(split_activities(raw.activity_text));
    r.cofactors = dedupe_nonempty(split_cofactors(raw.cofactor_text));
    for (auto& c : raw.comments) c = std::string(text::trim(c));
    r.comments = dedupe_nonempty(std::move(raw.comments));
    std::erase_if(raw.cross_refs, [](const CrossRef& x) { return x.accession.empty(); });
    r.cross_refs = dedupe(std::move(raw.cross_refs));

    if (r.status == Status::kActive && !r.recommended_name) {
      result_.errors.push_back({raw.line, r.ec, "entry " + r.ec + " has no DE line"});
      return;
    }
    if (auto problem = check_record(r)) {
      result_.errors.push_back({raw.line, r.ec, "entry " + r.ec + ": " + *problem});
      return;
    }
    if (!ecs_.insert(r.ec).second) {
      result_.errors.push_back({raw.line, r.ec, "duplicate entry for " + r.ec});
      return;
    }
    result_.doc.records.push_back(std::move(r));
  }

  ParseResult result_;
  std::optional<RawEntry> entry_;
  std::set<std::string> ecs_;
  bool seen_id_ = false;
  bool skipping_ = false;
  std::string skip_ec_;
  std::size_t skip_line_ = 0;
  std::size_t header_lines_ = 0;
};

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kActive: return "active";
    case Status::kDeleted: return "deleted";
    case Status::kTransferred: return "transferred";
  }
  return "active";
}

std::optional<Status> parse_status(std::string_view text) {
  if (text == "active") return Status::kActive;
  if (text == "deleted") return Status::kDeleted;
  if (text == "transferred") return Status::kTransferred;
  return std::nullopt;
}

std::vector<std::string> split_activities(std::string_view joined) {
  joined = text::trim(joined);
  std::vector<std::string> out;
  if (joined.empty()) return out;
  if (!joined.starts_with("(1) ")) {
    out.push_back(strip_trailing_periods(joined));
    return out;
  }
  std::size_t start = 4;
  for (int next = 2;; ++next) {
    const std::string marker = " (" + std::to_string(next) + ") ";
    const auto pos = joined.find(marker, start);
    if (pos == std::string_view::npos) {
      out.push_back(strip_trailing_periods(joined.substr(start)));
      break;
    }
    out.push_back(strip_trailing_periods(joined.substr(start, pos - start)));
    start = pos + marker.size();
  }
  return out;
}

std::vector<std::string> split_cofactors(std::string_view joined) {
  std::vector<std::string> out;
  for (const auto& part : split(joined, ';')) {
    std::string_view rest = part;
    while (true) {
      const auto pos = rest.find(" or ");
      auto piece = strip_trailing_periods(rest.substr(0, pos));
      if (!piece.empty()) out.push_back(std::move(piece));
      if (pos == std::string_view::npos) break;
      rest = rest.substr(pos + 4);
    }
  }
  return out;
}

std::vector<std::string> extract_ec_numbers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto token_char = [](char c) { return (c >= '0' && c <= '9') || c == '.' || c == 'n'; };
  while (i < text.size()) {
    if (!token_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && token_char(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    while (!token.empty() && token.back() == '.') token.remove_suffix(1);
    if (validate_ec(token) && std::find(out.begin(), out.end(), token) == out.end()) out.emplace_back(token);
    i = j;
  }
  return out;
}

std::optional<std::string> check_record(const Record& r) {
  if (!validate_ec(r.ec)) return "invalid EC number '" + r.ec + "'";
  if (r.status == Status::kActive && !r.recommended_name) return std::string("active entry without a name");
  if (r.status != Status::kActive && r.recommended_name) return std::string("deleted/transferred entry with a name");
  if (r.status == Status::kTransferred && r.transferred_to.empty()) return std::string("transferred entry without targets");
  if (r.status != Status::kTransferred && !r.transferred_to.empty()) return std::string("transfer targets on a non-transferred entry");
  for (const auto& t : r.transferred_to) {
    if (!validate_ec(t)) return "invalid transfer target '" + t + "'";
  }

  auto check_text = [](const std::string& s, bool no_period) -> std::optional<std::string> {
    if (s.empty()) return std::string("empty text field");
    if (!text::is_valid_utf8(s)) return std::string("text is not valid UTF-8");
    if (text::trim(s) != s) return "untrimmed text '" + s + "'";
    if (text::has_control_chars(s)) return std::string("control character in text");
    if (no_period && s.back() == '.') return "trailing period in '" + s + "'";
    return std::nullopt;
  };
  auto check_list = [&](const std::vector<std::string>& items, bool no_period) -> std::optional<std::string> {
    std::set<std::string_view> seen;
    for (const auto& s : items) {
      if (auto p = check_text(s, no_period)) return p;
      if (!seen.insert(s).second) return "duplicate entry '" + s + "'";
    }
    return std::nullopt;
  };

  if (r.recommended_name) {
    if (auto p = check_text(*r.recommended_name, true)) return p;
  }
  if (auto p = check_list(r.alt_names, true)) return p;
  if (auto p = check_list(r.activities, true)) return p;
  if (auto p = check_list(r.cofactors, false)) return p;
  if (auto p = check_list(r.comments, false)) return p;
  if (auto p = check_list(r.transferred_to, false)) return p;

  std::set<CrossRef> refs;
  for (const auto& x : r.cross_refs) {
    if (auto p = check_text(x.database, false)) return p;
    if (auto p = check_text(x.accession, false)) return p;
    if (!x.entry_name.empty()) {
      if (auto p = check_text(x.entry_name, false)) return p;
    }
    if (!refs.insert(x).second) return "duplicate cross-reference " + x.database + ":" + x.accession;
  }
  return std::nullopt;
}

ParseResult parse_flat_file(std::string_view data, std::string release) {
  if (auto bad = text::first_invalid_utf8(data)) {
    throw FatalParseError(*bad, "input is not valid UTF-8 at byte offset " + std::to_string(*bad));
  }
  FlatFileParser parser(std::move(release));
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    auto nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    parser.feed(data.substr(pos, nl - pos), ++line_no);
    pos = nl + 1;
  }
  return parser.finish();
}

ParseResult parse_flat_file(std::istream& in, std::string release) {
  std::string data(std::istreambuf_iterator<char>(in), {});
  return parse_flat_file(data, std::move(release));
}

}  // namespace cw::enzyme
