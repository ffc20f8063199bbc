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

#include "ntriples_validator.hpp"

#include <regex>
#include <sstream>

namespace cwtest::nt {
namespace {

void put_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool utf8_ok(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (n == 0 || i + n > s.size()) return false;
    for (std::size_t k = 1; k < n; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += n;
  }
  return true;
}

class LineParser {
 public:
  explicit LineParser(std::string_view s) : s_(s) {}

  std::optional<Triple> parse(std::string& error) {
    Triple t;
    skip_ws();
    if (!subject(t.subject, error)) return std::nullopt;
    if (!require_ws(error)) return std::nullopt;
    if (!iri(t.predicate, error)) return std::nullopt;
    if (!require_ws(error)) return std::nullopt;
    if (!object(t.object, error)) return std::nullopt;
    skip_ws();
    if (at_end() || s_[pos_] != '.') {
      error = "expected '.' at column " + std::to_string(pos_ + 1);
      return std::nullopt;
    }
    ++pos_;
    skip_ws();
    if (!at_end() && s_[pos_] != '#') {
      error = "trailing content after '.'";
      return std::nullopt;
    }
    return t;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool require_ws(std::string& error) {
    const auto before = pos_;
    skip_ws();
    if (pos_ == before && !at_end() && s_[pos_] != '"' && s_[pos_] != '<' && s_[pos_] != '_') {
      error = "expected whitespace at column " + std::to_string(pos_ + 1);
      return false;
    }
    return true;
  }

  bool hex(std::size_t n, unsigned long& cp, std::string& error) {
    if (pos_ + n > s_.size()) {
      error = "truncated \\u escape";
      return false;
    }
    cp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const char c = s_[pos_ + i];
      int v = c >= '0' && c <= '9' ? c - '0' : c >= 'a' && c <= 'f' ? c - 'a' + 10 : c >= 'A' && c <= 'F' ? c - 'A' + 10 : -1;
      if (v < 0) {
        error = "bad hex digit in escape";
        return false;
      }
      cp = cp * 16 + static_cast<unsigned long>(v);
    }
    pos_ += n;
    return true;
  }

  bool iri(Node& node, std::string& error) {
    if (at_end() || s_[pos_] != '<') {
      error = "expected IRI at column " + std::to_string(pos_ + 1);
      return false;
    }
    ++pos_;
    std::string value;
    while (true) {
      if (at_end()) {
        error = "unterminated IRI";
        return false;
      }
      const char c = s_[pos_];
      if (c == '>') break;
      if (c == '\\') {
        ++pos_;
        if (at_end() || (s_[pos_] != 'u' && s_[pos_] != 'U')) {
          error = "only \\u and \\U escapes are allowed in IRIs";
          return false;
        }
        const std::size_t n = s_[pos_] == 'u' ? 4 : 8;
        ++pos_;
        unsigned long cp = 0;
        if (!hex(n, cp, error)) return false;
        put_utf8(value, cp);
        continue;
      }
      const auto u = static_cast<unsigned char>(c);
      if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        error = "character not allowed in IRI at column " + std::to_string(pos_ + 1);
        return false;
      }
      value.push_back(c);
      ++pos_;
    }
    ++pos_;
    // IRIREF must be absolute: scheme ":" ...
    static const std::regex scheme("^[A-Za-z][A-Za-z0-9+.-]*:.*");
    if (!std::regex_match(value, scheme)) {
      error = "relative IRI <" + value + ">";
      return false;
    }
    node.kind = Node::kIri;
    node.value = std::move(value);
    return true;
  }

  bool blank(Node& node, std::string& error) {
    if (s_.substr(pos_, 2) != "_:") {
      error = "expected blank node";
      return false;
    }
    pos_ += 2;
    const auto start = pos_;
    while (!at_end() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.') ++pos_;
    if (pos_ == start) {
      error = "empty blank node label";
      return false;
    }
    node.kind = Node::kBlank;
    node.value = std::string(s_.substr(start, pos_ - start));
    return true;
  }

  bool subject(Node& node, std::string& error) {
    if (!at_end() && s_[pos_] == '_') return blank(node, error);
    return iri(node, error);
  }

  bool literal(Node& node, std::string& error) {
    ++pos_;  // opening quote
    const auto start = pos_;
    while (true) {
      if (at_end()) {
        error = "unterminated literal";
        return false;
      }
      const char c = s_[pos_];
      if (c == '"') break;
      if (c == '\n' || c == '\r') {
        error = "raw line break in literal";
        return false;
      }
      pos_ += c == '\\' ? 2 : 1;
    }
    auto body = unescape(s_.substr(start, pos_ - start));
    if (!body) {
      error = "invalid escape in literal";
      return false;
    }
    ++pos_;
    node.kind = Node::kLiteral;
    node.value = std::move(*body);
    if (!at_end() && s_[pos_] == '@') {
      ++pos_;
      static const std::regex lang("^[a-zA-Z]+(-[a-zA-Z0-9]+)*");
      std::match_results<std::string_view::const_iterator> m;
      const auto rest = s_.substr(pos_);
      if (!std::regex_search(rest.begin(), rest.end(), m, lang)) {
        error = "malformed language tag";
        return false;
      }
      node.language = m.str();
      pos_ += node.language.size();
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      Node dt;
      if (!iri(dt, error)) return false;
      node.datatype = dt.value;
    }
    return true;
  }

  bool object(Node& node, std::string& error) {
    if (at_end()) {
      error = "missing object";
      return false;
    }
    if (s_[pos_] == '"') return literal(node, error);
    if (s_[pos_] == '_') return blank(node, error);
    return iri(node, error);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<std::string> unescape(std::string_view body) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '"' || c == '\n' || c == '\r') return std::nullopt;
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= body.size()) return std::nullopt;
    switch (body[i]) {
      case 't': out.push_back('\t'); break;
      case 'b': out.push_back('\b'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\'': out.push_back('\''); break;
      case '\\': out.push_back('\\'); break;
      case 'u':
      case 'U': {
        const std::size_t n = body[i] == 'u' ? 4 : 8;
        if (i + n >= body.size()) return std::nullopt;
        unsigned long cp = 0;
        for (std::size_t k = 1; k <= n; ++k) {
          const char h = body[i + k];
          int v = h >= '0' && h <= '9' ? h - '0' : h >= 'a' && h <= 'f' ? h - 'a' + 10 : h >= 'A' && h <= 'F' ? h - 'A' + 10 : -1;
          if (v < 0) return std::nullopt;
          cp = cp * 16 + static_cast<unsigned long>(v);
        }
        put_utf8(out, cp);
        i += n;
        break;
      }
      default: return std::nullopt;
    }
  }
  return out;
}

Result parse(std::string_view document) {
  Result result;
  if (!utf8_ok(document)) {
    result.errors.push_back({0, "document is not UTF-8"});
    return result;
  }
  std::size_t line_no = 0, pos = 0;
  while (pos < document.size()) {
    auto nl = document.find('\n', pos);
    if (nl == std::string_view::npos) {
      result.errors.push_back({line_no + 1, "last line lacks a newline"});
      nl = document.size();
    }
    auto line = document.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::string error;
    LineParser p(line);
    if (auto t = p.parse(error)) {
      result.triples.push_back(std::move(*t));
    } else {
      result.errors.push_back({line_no, error});
    }
  }
  return result;
}

std::optional<std::string> expand_turtle_subset(std::string_view turtle) {
  static const std::regex prefix_line(R"(^@prefix\s+([A-Za-z][\w-]*)?:\s+<([^>]*)>\s*\.$)");
  std::istringstream in{std::string(turtle)};
  std::string line, out;
  std::string name, base;
  bool have_prefix = false;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!have_prefix && std::regex_match(line, m, prefix_line)) {
      name = m[1].str();
      base = m[2].str();
      have_prefix = true;
      continue;
    }
    if (line.starts_with("@")) return std::nullopt;
    // Expand name:local tokens outside of literals.
    std::string expanded;
    bool in_literal = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (in_literal) {
        expanded.push_back(c);
        if (c == '\\' && i + 1 < line.size()) expanded.push_back(line[++i]);
        else if (c == '"') in_literal = false;
        continue;
      }
      if (c == '"') {
        in_literal = true;
        expanded.push_back(c);
        continue;
      }
      if (have_prefix && line.compare(i, name.size() + 1, name + ":") == 0 &&
          (i == 0 || line[i - 1] == ' ')) {
        std::size_t j = i + name.size() + 1;
        while (j < line.size() && line[j] != ' ') ++j;
        expanded += "<" + base + line.substr(i + name.size() + 1, j - i - name.size() - 1) + ">";
        i = j - 1;
        continue;
      }
      expanded.push_back(c);
    }
    out += expanded + "\n";
  }
  return out;
}

bool contains_uuid(std::string_view iri) {
  static const std::regex uuid("[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}");
  return std::regex_search(iri.begin(), iri.end(), uuid);
}

}  // namespace cwtest::nt
