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

#include "cw/journal.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cw/error.hpp"

namespace cw {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::kCorruptJournal, what); }

[[noreturn]] void io_failure(const std::string& what) {
  throw Error(ErrorCode::kIo, what + ": " + std::strerror(errno));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& obj, const char* name) {
  if (!obj.is_object()) corrupt("expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) corrupt(std::string("missing field '") + name + "'");
  return *it;
}

std::string text_field(const json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_string()) corrupt(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

EntityId id_field(const json& obj, const char* name) {
  const auto text = text_field(obj, name);
  if (!is_canonical_id_text(text)) corrupt(std::string("field '") + name + "' is not a canonical UUID");
  return EntityId::from_string(text);
}

Timestamp ts_field(const json& obj, const char* name) {
  auto ts = parse_rfc3339(text_field(obj, name));
  if (!ts) corrupt(std::string("field '") + name + "' is not an RFC 3339 UTC timestamp");
  return *ts;
}

ojson encode_source(const Source& s) {
  ojson j{{"kind", std::string(to_string(s.kind))}, {"name", s.name}};
  if (s.kind == SourceKind::kAuthority) j["release"] = s.release;
  return j;
}

Source decode_source(const json& j) {
  const auto kind = text_field(j, "kind");
  if (kind == "authority") return Source::authority(text_field(j, "name"), text_field(j, "release"));
  if (kind == "user") return Source::user(text_field(j, "name"));
  corrupt("unknown source kind '" + kind + "'");
}

ProvenanceStatus decode_status(const std::string& s) {
  if (s == "supported") return ProvenanceStatus::kSupported;
  if (s == "withdrawn") return ProvenanceStatus::kWithdrawn;
  corrupt("unknown provenance status '" + s + "'");
}

ojson encode_body(const JournalOp& op) {
  return std::visit(
      Overloaded{
          [](const RegisterTypeOp& o) { return ojson{{"label", o.label}}; },
          [](const InternTermOp& o) {
            return ojson{{"id", o.term.id.str()}, {"label", o.term.label}, {"lang", o.term.language}};
          },
          [](const PutConceptOp& o) {
            const auto& c = o.concept_value;
            ojson syn = ojson::array();
            for (const auto& t : c.synonyms) syn.push_back(t.str());
            ojson body{{"id", c.id.str()},
                      {"preferred", c.preferred.str()},
                      {"synonyms", std::move(syn)},
                      {"types", c.types},
                      {"definition", nullptr}};
            if (c.definition) body["definition"] = *c.definition;
            return body;
          },
          [](const AssertTripleOp& o) {
            ojson prov = ojson::array();
            for (const auto& p : o.provenance) {
              prov.push_back({{"source", encode_source(p.source)},
                              {"status", std::string(to_string(p.status))},
                              {"ts", format_rfc3339(p.timestamp)}});
            }
            return ojson{{"id", o.id.str()},
                        {"subject", o.subject.str()},
                        {"predicate", o.predicate.str()},
                        {"object", {{"kind", std::string(to_string(o.object.kind))}, {"id", o.object.id.str()}}},
                        {"provenance", std::move(prov)}};
          },
          [](const WithdrawTripleOp& o) {
            return ojson{{"id", o.triple.str()}, {"source", encode_source(o.source)}, {"ts", format_rfc3339(o.timestamp)}};
          },
      },
      op);
}

JournalOp decode_body(const std::string& tag, const json& body) {
  if (tag == "type.register") return RegisterTypeOp{text_field(body, "label")};
  if (tag == "term.intern") {
    return InternTermOp{Term{id_field(body, "id"), text_field(body, "label"), text_field(body, "lang")}};
  }
  if (tag == "concept.put") {
    Concept c;
    c.id = id_field(body, "id");
    c.preferred = id_field(body, "preferred");
    const auto& syn = field(body, "synonyms");
    if (!syn.is_array()) corrupt("'synonyms' must be an array");
    for (const auto& s : syn) {
      if (!s.is_string() || !is_canonical_id_text(s.get<std::string>())) corrupt("bad synonym id");
      c.synonyms.insert(EntityId::from_string(s.get<std::string>()));
    }
    const auto& types = field(body, "types");
    if (!types.is_array()) corrupt("'types' must be an array");
    for (const auto& t : types) {
      if (!t.is_string()) corrupt("bad semantic type");
      c.types.insert(t.get<std::string>());
    }
    const auto& def = field(body, "definition");
    if (def.is_string()) {
      c.definition = def.get<std::string>();
    } else if (!def.is_null()) {
      corrupt("'definition' must be a string or null");
    }
    return PutConceptOp{std::move(c)};
  }
  if (tag == "triple.assert") {
    AssertTripleOp o;
    o.id = id_field(body, "id");
    o.subject = id_field(body, "subject");
    o.predicate = id_field(body, "predicate");
    const auto& obj = field(body, "object");
    const auto kind = text_field(obj, "kind");
    if (kind != "concept" && kind != "term") corrupt("unknown object kind '" + kind + "'");
    o.object = {kind == "concept" ? ObjectKind::kConcept : ObjectKind::kTerm, id_field(obj, "id")};
    const auto& prov = field(body, "provenance");
    if (!prov.is_array() || prov.empty()) corrupt("'provenance' must be a non-empty array");
    for (const auto& p : prov) {
      o.provenance.push_back({decode_source(field(p, "source")), decode_status(text_field(p, "status")), ts_field(p, "ts")});
    }
    return o;
  }
  if (tag == "triple.withdraw") {
    return WithdrawTripleOp{id_field(body, "id"), decode_source(field(body, "source")), ts_field(body, "ts")};
  }
  corrupt("unknown op '" + tag + "'");
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_failure("write to " + path.string());
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string encode_all(std::span<const JournalEntry> entries) {
  std::string out;
  for (const auto& e : entries) out += encode_entry(e);
  return out;
}

}  // namespace

std::string_view op_tag(const JournalOp& op) {
  return std::visit(Overloaded{
                        [](const RegisterTypeOp&) { return std::string_view("type.register"); },
                        [](const InternTermOp&) { return std::string_view("term.intern"); },
                        [](const PutConceptOp&) { return std::string_view("concept.put"); },
                        [](const AssertTripleOp&) { return std::string_view("triple.assert"); },
                        [](const WithdrawTripleOp&) { return std::string_view("triple.withdraw"); },
                    },
                    op);
}

std::string encode_entry(const JournalEntry& entry) {
  // Key order is fixed by construction order with ordered_json.
  nlohmann::ordered_json line;
  line["seq"] = entry.seq;
  line["ts"] = format_rfc3339(entry.timestamp);
  line["op"] = std::string(op_tag(entry.op));
  line["body"] = encode_body(entry.op);
  auto text = line.dump();
  text.push_back('\n');
  return text;
}

JournalEntry decode_entry(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    corrupt(std::string("invalid JSON: ") + e.what());
  }
  JournalEntry entry;
  const auto& seq = field(j, "seq");
  if (!seq.is_number_unsigned()) corrupt("'seq' must be a positive integer");
  entry.seq = seq.get<std::uint64_t>();
  entry.timestamp = ts_field(j, "ts");
  entry.op = decode_body(text_field(j, "op"), field(j, "body"));
  return entry;
}

JournalFile::JournalFile(std::filesystem::path path) : path_(std::move(path)) {}

JournalFile::~JournalFile() { close_fd(); }

bool JournalFile::exists() const { return std::filesystem::exists(path_); }

JournalLoad JournalFile::load() {
  JournalLoad result;
  std::ifstream in(path_, std::ios::binary);
  if (!in) return result;
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string data = buffer.str();
  in.close();

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    const auto nl = data.find('\n', pos);
    ++line_no;
    if (nl == std::string::npos) {
      result.truncated_bytes = data.size() - pos;
      result.warnings.push_back("journal line " + std::to_string(line_no) + " is incomplete (" +
                                std::to_string(result.truncated_bytes) + " bytes); truncated");
      std::error_code ec;
      std::filesystem::resize_file(path_, pos, ec);
      if (ec) throw Error(ErrorCode::kIo, "cannot truncate " + path_.string() + ": " + ec.message());
      break;
    }
    const std::string_view line(data.data() + pos, nl - pos);
    try {
      auto entry = decode_entry(line);
      if (entry.seq != result.entries.size() + 1) {
        corrupt("expected seq " + std::to_string(result.entries.size() + 1) + ", found " + std::to_string(entry.seq));
      }
      result.entries.push_back(std::move(entry));
    } catch (const Error& e) {
      throw Error(ErrorCode::kCorruptJournal,
                  path_.filename().string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    pos = nl + 1;
  }
  return result;
}

void JournalFile::open_for_append() {
  if (fd_ >= 0) return;
  fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) io_failure("open " + path_.string());
}

void JournalFile::close_fd() {
  if (fd_ >= 0) {
    ::fsync(fd_);
    ::close(fd_);
    fd_ = -1;
  }
}

void JournalFile::append(std::span<const JournalEntry> entries) {
  if (entries.empty()) return;
  open_for_append();
  write_all(fd_, encode_all(entries), path_);
}

void JournalFile::sync() {
  if (fd_ >= 0 && ::fsync(fd_) != 0) io_failure("fsync " + path_.string());
}

void JournalFile::replace(std::span<const JournalEntry> entries) {
  auto tmp = path_;
  tmp += ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_failure("open " + tmp.string());
  try {
    write_all(fd, encode_all(entries), tmp);
    if (::fsync(fd) != 0) io_failure("fsync " + tmp.string());
  } catch (...) {
    ::close(fd);
    std::filesystem::remove(tmp);
    throw;
  }
  ::close(fd);
  close_fd();
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::kIo, "rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace cw
