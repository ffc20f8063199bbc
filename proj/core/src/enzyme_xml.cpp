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

#include <expat.h>

#include <map>
#include <memory>
#include <set>

#include "cw/ec_number.hpp"
#include "cw/enzyme.hpp"

namespace cw::enzyme {
namespace {

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
}

void leaf(std::string& out, std::string_view name, std::string_view value) {
  out += "    <";
  out += name;
  out += '>';
  escape_into(out, value);
  out += "</";
  out += name;
  out += ">\n";
}

// Minimal DOM; expat only tokenizes.
struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<std::unique_ptr<Node>> children;
  std::string text;
  std::size_t line = 0;
  Node* parent = nullptr;

  [[nodiscard]] const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

struct Builder {
  std::unique_ptr<Node> root;
  Node* current = nullptr;
  XML_Parser parser = nullptr;
  bool doctype = false;
  std::size_t doctype_line = 0;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* b = static_cast<Builder*>(data);
  auto node = std::make_unique<Node>();
  node->name = name;
  node->line = XML_GetCurrentLineNumber(b->parser);
  for (int i = 0; attrs[i] != nullptr; i += 2) node->attrs.emplace_back(attrs[i], attrs[i + 1]);
  Node* raw = node.get();
  if (b->current == nullptr) {
    b->root = std::move(node);
  } else {
    raw->parent = b->current;
    b->current->children.push_back(std::move(node));
  }
  b->current = raw;
}

void XMLCALL on_end(void* data, const XML_Char*) {
  auto* b = static_cast<Builder*>(data);
  b->current = b->current->parent;
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  auto* b = static_cast<Builder*>(data);
  if (b->current != nullptr) b->current->text.append(s, static_cast<std::size_t>(len));
}

void XMLCALL on_doctype(void* data, const XML_Char*, const XML_Char*, const XML_Char*, int) {
  auto* b = static_cast<Builder*>(data);
  b->doctype = true;
  b->doctype_line = XML_GetCurrentLineNumber(b->parser);
  XML_StopParser(b->parser, XML_FALSE);
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::unique_ptr<Node> parse_dom(std::string_view xml) {
  Builder b;
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw XmlSchemaError("/", 0, "cannot create XML parser");
  b.parser = parser.get();
  XML_SetUserData(b.parser, &b);
  XML_SetElementHandler(b.parser, on_start, on_end);
  XML_SetCharacterDataHandler(b.parser, on_text);
  XML_SetStartDoctypeDeclHandler(b.parser, on_doctype);
  const auto status = XML_Parse(b.parser, xml.data(), static_cast<int>(xml.size()), XML_TRUE);
  if (b.doctype) throw XmlSchemaError("/", b.doctype_line, "document type declarations are not allowed");
  if (status != XML_STATUS_OK) {
    throw XmlSchemaError("/", XML_GetCurrentLineNumber(b.parser), XML_ErrorString(XML_GetErrorCode(b.parser)));
  }
  if (!b.root) throw XmlSchemaError("/", 1, "empty document");
  return std::move(b.root);
}

void only_attrs(const Node& n, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : n.attrs) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw XmlSchemaError(path + "@" + k, n.line, "unexpected attribute '" + k + "'");
    }
  }
}

const std::string& required_attr(const Node& n, const std::string& path, std::string_view key) {
  const auto* v = n.attr(key);
  if (v == nullptr) throw XmlSchemaError(path + "@" + std::string(key), n.line, "missing attribute");
  return *v;
}

// Order in which children of <enzyme> must appear.
const std::map<std::string, int, std::less<>> kChildRank = {
    {"transferredTo", 0}, {"name", 1}, {"synonym", 2}, {"activity", 3},
    {"cofactor", 4},      {"comment", 5}, {"xref", 6},
};

Record read_enzyme(const Node& n, const std::string& path) {
  only_attrs(n, path, {"ec", "status"});
  Record r;
  r.ec = required_attr(n, path, "ec");
  if (!validate_ec(r.ec)) throw XmlSchemaError(path + "@ec", n.line, "invalid EC number '" + r.ec + "'");
  const auto& status_text = required_attr(n, path, "status");
  const auto status = parse_status(status_text);
  if (!status) throw XmlSchemaError(path + "@status", n.line, "invalid status '" + status_text + "'");
  r.status = *status;
  if (!blank(n.text)) throw XmlSchemaError(path, n.line, "unexpected text content");

  int last_rank = -1;
  std::map<std::string, int> counts;
  for (const auto& child : n.children) {
    const std::string cpath = path + "/" + child->name + "[" + std::to_string(++counts[child->name]) + "]";
    const auto it = kChildRank.find(child->name);
    if (it == kChildRank.end()) throw XmlSchemaError(cpath, child->line, "unexpected element <" + child->name + ">");
    if (it->second < last_rank) throw XmlSchemaError(cpath, child->line, "element <" + child->name + "> out of order");
    last_rank = it->second;
    if (!child->children.empty()) {
      throw XmlSchemaError(cpath + "/" + child->children.front()->name + "[1]", child->children.front()->line,
                           "unexpected element");
    }
    if (child->name == "xref") {
      only_attrs(*child, cpath, {"db", "acc", "entry"});
      if (!blank(child->text)) throw XmlSchemaError(cpath, child->line, "unexpected text content");
      const auto* entry = child->attr("entry");
      r.cross_refs.push_back({required_attr(*child, cpath, "db"), required_attr(*child, cpath, "acc"), entry ? *entry : ""});
      continue;
    }
    only_attrs(*child, cpath, {});
    if (child->name == "name") {
      if (r.recommended_name) throw XmlSchemaError(cpath, child->line, "more than one <name>");
      r.recommended_name = child->text;
    } else if (child->name == "transferredTo") {
      r.transferred_to.push_back(child->text);
    } else if (child->name == "synonym") {
      r.alt_names.push_back(child->text);
    } else if (child->name == "activity") {
      r.activities.push_back(child->text);
    } else if (child->name == "cofactor") {
      r.cofactors.push_back(child->text);
    } else {
      r.comments.push_back(child->text);
    }
  }
  if (auto problem = check_record(r)) throw XmlSchemaError(path, n.line, *problem);
  return r;
}

}  // namespace

std::string records_to_xml(const Document& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<enzymeImport release=\"";
  escape_into(out, doc.release);
  if (doc.records.empty()) {
    out += "\"/>\n";
    return out;
  }
  out += "\">\n";
  for (const auto& r : doc.records) {
    out += "  <enzyme ec=\"";
    escape_into(out, r.ec);
    out += "\" status=\"";
    out += to_string(r.status);
    out += '"';
    const bool empty = r.transferred_to.empty() && !r.recommended_name && r.alt_names.empty() && r.activities.empty() &&
                       r.cofactors.empty() && r.comments.empty() && r.cross_refs.empty();
    if (empty) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    for (const auto& t : r.transferred_to) leaf(out, "transferredTo", t);
    if (r.recommended_name) leaf(out, "name", *r.recommended_name);
    for (const auto& s : r.alt_names) leaf(out, "synonym", s);
    for (const auto& s : r.activities) leaf(out, "activity", s);
    for (const auto& s : r.cofactors) leaf(out, "cofactor", s);
    for (const auto& s : r.comments) leaf(out, "comment", s);
    for (const auto& x : r.cross_refs) {
      out += "    <xref db=\"";
      escape_into(out, x.database);
      out += "\" acc=\"";
      escape_into(out, x.accession);
      out += "\" entry=\"";
      escape_into(out, x.entry_name);
      out += "\"/>\n";
    }
    out += "  </enzyme>\n";
  }
  out += "</enzymeImport>\n";
  return out;
}

Document xml_to_records(std::string_view xml) {
  const auto root = parse_dom(xml);
  const std::string root_path = "/" + root->name;
  if (root->name != "enzymeImport") throw XmlSchemaError(root_path, root->line, "root element must be <enzymeImport>");
  only_attrs(*root, root_path, {"release"});
  Document doc;
  doc.release = required_attr(*root, root_path, "release");
  if (!blank(root->text)) throw XmlSchemaError(root_path, root->line, "unexpected text content");

  std::set<std::string> ecs;
  std::map<std::string, int> counts;
  for (const auto& child : root->children) {
    const std::string path = root_path + "/" + child->name + "[" + std::to_string(++counts[child->name]) + "]";
    if (child->name != "enzyme") throw XmlSchemaError(path, child->line, "unexpected element <" + child->name + ">");
    Record r = read_enzyme(*child, path);
    if (!ecs.insert(r.ec).second) throw XmlSchemaError(path + "@ec", child->line, "duplicate EC number " + r.ec);
    doc.records.push_back(std::move(r));
  }
  return doc;
}

}  // namespace cw::enzyme
