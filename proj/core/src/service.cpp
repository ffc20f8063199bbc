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

#include "cw/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>

#include "cw/error.hpp"
#include "cw/rdf.hpp"
#include "cw/text.hpp"

namespace cw::service {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kDefaultLimit = 20;
constexpr std::size_t kMaxLimit = 100;

struct ApiError {
  int status;
  std::string code;
  std::string message;
};

// Messages may echo client input, so invalid UTF-8 is replaced, not thrown.
Response json_response(int status, const json& body) {
  return {status, "application/json", body.dump(-1, ' ', false, json::error_handler_t::replace), {}};
}

Response error_response(const ApiError& e) {
  return json_response(e.status, json{{"status", e.status}, {"code", e.code}, {"message", e.message}});
}

ApiError from_error(const Error& e) {
  const std::string code(to_string(e.code()));
  switch (e.code()) {
    case ErrorCode::kInvalidArgument: return {400, code, e.what()};
    case ErrorCode::kUnknownConcept:
    case ErrorCode::kUnknownTerm:
    case ErrorCode::kUnknownTriple: return {404, code, e.what()};
    case ErrorCode::kInvalidPredicate: return {422, code, e.what()};
    case ErrorCode::kConflict:
    case ErrorCode::kEcSynonymTaken:
    case ErrorCode::kStalePlan: return {409, code, e.what()};
    case ErrorCode::kCorruptJournal:
    case ErrorCode::kIo: break;
  }
  return {500, code, e.what()};
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) parts.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

EntityId parse_id(const std::string& text, std::string_view what) {
  if (auto id = EntityId::parse(text)) return *id;
  throw ApiError{400, "invalid_id", "malformed " + std::string(what) + " id: " + text};
}

json term_json(const Term& t) { return {{"id", t.id.str()}, {"label", t.label}, {"language", t.language}}; }

json provenance_json(const Provenance& p) {
  json j{{"source", p.source.name}, {"kind", to_string(p.source.kind)}};
  if (!p.source.release.empty()) j["release"] = p.source.release;
  j["status"] = to_string(p.status);
  j["timestamp"] = format_rfc3339(p.timestamp);
  return j;
}

json triple_json(const StoreState& s, const Triple& t) {
  json object{{"kind", to_string(t.object.kind)}, {"id", t.object.id.str()}};
  if (t.object.kind == ObjectKind::kConcept) {
    object["label"] = s.preferred_label(t.object.id);
  } else {
    const auto& term = s.get_term(t.object.id);
    object["label"] = term.label;
    object["language"] = term.language;
  }
  json prov = json::array();
  for (const auto& p : t.provenance) prov.push_back(provenance_json(p));
  return {{"id", t.id.str()},
          {"subject", {{"id", t.subject.str()}, {"label", s.preferred_label(t.subject)}}},
          {"predicate", {{"id", t.predicate.str()}, {"label", s.preferred_label(t.predicate)}}},
          {"object", std::move(object)},
          {"provenance", std::move(prov)}};
}

json concept_json(const StoreState& s, EntityId id) {
  const auto& c = s.get_concept(id);
  std::vector<const Term*> synonyms;
  for (const auto& t : c.synonyms) synonyms.push_back(&s.get_term(t));
  std::sort(synonyms.begin(), synonyms.end(), [](const Term* a, const Term* b) {
    return std::tie(a->label, a->language, a->id) < std::tie(b->label, b->language, b->id);
  });
  json syn = json::array();
  for (const auto* t : synonyms) syn.push_back(term_json(*t));
  json triples = json::array();
  for (const auto& t : s.triples_about(id, Role::kAny)) triples.push_back(triple_json(s, t));
  return {{"id", c.id.str()},
          {"preferred", term_json(s.get_term(c.preferred))},
          {"synonyms", std::move(syn)},
          {"semanticTypes", c.types},
          {"definition", c.definition ? json(*c.definition) : json(nullptr)},
          {"triples", std::move(triples)}};
}

json parse_body(const Request& req) {
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw ApiError{400, "invalid_body", "request body must be a JSON object"};
  return body;
}

std::string required_string(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw ApiError{400, "invalid_body", std::string("field '") + key + "' must be a string"};
  }
  return it->get<std::string>();
}

std::string optional_string(const json& body, const char* key, std::string fallback) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw ApiError{400, "invalid_body", std::string("field '") + key + "' must be a string"};
  return it->get<std::string>();
}

std::size_t parse_count(const std::map<std::string, std::string>& query, const char* key, std::size_t fallback,
                        std::size_t min) {
  auto it = query.find(key);
  if (it == query.end()) return fallback;
  std::size_t value = 0;
  const auto& s = it->second;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || value < min) {
    throw ApiError{400, "invalid_query", std::string("parameter '") + key + "' must be an integer >= " + std::to_string(min)};
  }
  return value;
}

Response search(const StoreState& s, const Request& req) {
  SynonymQuery q;
  auto it = req.query.find("q");
  q.label = it == req.query.end() ? std::string() : std::string(text::trim(it->second));
  if (q.label.empty()) throw ApiError{400, "invalid_query", "parameter 'q' must not be empty"};
  if (auto lang = req.query.find("lang"); lang != req.query.end() && !lang->second.empty()) {
    q.language = lang->second;
  }
  q.mode = SearchMode::kPrefix;
  q.limit = std::min(parse_count(req.query, "limit", kDefaultLimit, 1), kMaxLimit);
  q.offset = parse_count(req.query, "offset", 0, 0);
  json out = json::array();
  for (const auto& hit : s.search_synonyms(q)) {
    const auto& c = s.get_concept(hit.concept_id);
    const auto& matched = s.get_term(hit.matched_term);
    out.push_back({{"id", c.id.str()},
                   {"preferred", s.preferred_label(c.id)},
                   {"semanticTypes", c.types},
                   {"matchedSynonym", {{"label", matched.label}, {"language", matched.language}}}});
  }
  return json_response(200, out);
}

Response create_concept(Store& store, const Request& req) {
  const auto body = parse_body(req);
  ConceptSpec spec;
  spec.preferred = TermKey::make(required_string(body, "preferred"), optional_string(body, "language", "en"));
  auto types = body.find("semanticTypes");
  if (types == body.end() || !types->is_array() || types->empty()) {
    throw ApiError{400, "invalid_body", "field 'semanticTypes' must be a non-empty array"};
  }
  for (const auto& t : *types) {
    if (!t.is_string()) throw ApiError{400, "invalid_body", "semantic types must be strings"};
    spec.types.insert(t.get<std::string>());
  }
  if (auto def = optional_string(body, "definition", ""); !def.empty()) spec.definition = def;
  const auto id = store.put_concept(spec);
  return json_response(201, concept_json(*store.snapshot(), id));
}

Response create_triple(Store& store, const Request& req) {
  const auto body = parse_body(req);
  const auto user = std::string(text::trim(required_string(body, "user")));
  if (user.empty()) throw ApiError{400, "invalid_body", "field 'user' must not be empty"};
  const auto subject = parse_id(required_string(body, "subject"), "subject");
  const auto predicate = parse_id(required_string(body, "predicate"), "predicate");
  auto obj = body.find("object");
  if (obj == body.end() || !obj->is_object()) throw ApiError{400, "invalid_body", "field 'object' must be an object"};
  const auto kind = required_string(*obj, "kind");
  const auto value = required_string(*obj, "value");
  ObjectSpec object;
  if (kind == "concept") {
    object = ObjectRef::to_concept(parse_id(value, "object"));
  } else if (kind == "term") {
    object = TermKey::make(value, optional_string(*obj, "language", "en"));
  } else {
    throw ApiError{400, "invalid_body", "object kind must be 'concept' or 'term'"};
  }
  const auto result = store.assert_triple(subject, predicate, object, Source::user(user));
  return json_response(result.created ? 201 : 200, triple_json(*store.snapshot(), result.triple));
}

Response user_triples(const StoreState& s, const std::string& name) {
  json out = json::array();
  for (const auto& c : s.contributions(name)) {
    out.push_back({{"attributedAt", format_rfc3339(c.attributed_at)}, {"triple", triple_json(s, s.get_triple(c.triple))}});
  }
  return json_response(200, out);
}

Response concept_rdf(const StoreState& s, EntityId id, const Request& req) {
  rdf::ExportOptions opts;
  if (auto it = req.query.find("format"); it != req.query.end()) {
    auto f = rdf::parse_format(it->second);
    if (!f) throw ApiError{400, "invalid_format", "unknown RDF format: " + it->second};
    opts.format = *f;
  }
  if (auto it = req.query.find("style"); it != req.query.end()) {
    auto st = rdf::parse_object_style(it->second);
    if (!st) throw ApiError{400, "invalid_format", "unknown object style: " + it->second};
    opts.style = *st;
  }
  Response r{200, opts.format == rdf::Format::kTurtle ? "text/turtle" : "application/n-triples",
             rdf::export_concept(s, id, opts), {}};
  return r;
}

ApiError method_not_allowed(const Request& req) {
  return {405, "method_not_allowed", req.method + " is not supported on " + req.path};
}

}  // namespace

std::vector<std::string> parse_origin_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text::trim(text.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

Api::Api(Store& store, ApiOptions options) : store_(store), options_(std::move(options)) {}

Response Api::handle(const Request& req) const {
  Response res;
  if (req.method == "OPTIONS") {
    res.status = 204;
    res.content_type.clear();
  } else {
    try {
      res = route(req);
    } catch (const ApiError& e) {
      res = error_response(e);
    } catch (const Error& e) {
      res = error_response(from_error(e));
    } catch (const std::exception& e) {
      res = error_response({500, "internal", e.what()});
    }
  }

  auto origin = req.headers.find("origin");
  if (origin != req.headers.end()) {
    const auto& allowed = options_.cors_origins;
    const bool any = std::find(allowed.begin(), allowed.end(), "*") != allowed.end();
    if (any || std::find(allowed.begin(), allowed.end(), origin->second) != allowed.end()) {
      res.headers.emplace_back("Access-Control-Allow-Origin", any ? "*" : origin->second);
      res.headers.emplace_back("Vary", "Origin");
      if (req.method == "OPTIONS") {
        res.headers.emplace_back("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.headers.emplace_back("Access-Control-Allow-Headers", "Content-Type");
        res.headers.emplace_back("Access-Control-Max-Age", "600");
      }
    }
  }
  return res;
}

Response Api::route(const Request& req) const {
  const auto parts = split_path(req.path);
  const bool get = req.method == "GET" || req.method == "HEAD";
  const bool post = req.method == "POST";

  if (parts.size() == 1 && parts[0] == "concepts") {
    if (get) return search(*store_.snapshot(), req);
    if (post) return create_concept(store_, req);
    throw method_not_allowed(req);
  }
  if (parts.size() == 2 && parts[0] == "concepts") {
    if (!get) throw method_not_allowed(req);
    const auto id = parse_id(parts[1], "concept");
    return json_response(200, concept_json(*store_.snapshot(), id));
  }
  if (parts.size() == 3 && parts[0] == "concepts" && parts[2] == "rdf") {
    if (!get) throw method_not_allowed(req);
    const auto id = parse_id(parts[1], "concept");
    return concept_rdf(*store_.snapshot(), id, req);
  }
  if (parts.size() == 1 && parts[0] == "triples") {
    if (post) return create_triple(store_, req);
    throw method_not_allowed(req);
  }
  if (parts.size() == 3 && parts[0] == "users" && parts[2] == "triples") {
    if (!get) throw method_not_allowed(req);
    return user_triples(*store_.snapshot(), parts[1]);
  }
  throw ApiError{404, "not_found", "no route for " + req.path};
}

struct Server::Impl {
  httplib::Server http;
};

Server::Server(const Api& api) : impl_(std::make_unique<Impl>()) {
  auto handler = [&api](const httplib::Request& in, httplib::Response& out) {
    Request req;
    req.method = in.method;
    req.path = in.path;
    for (const auto& [k, v] : in.params) req.query.emplace(k, v);
    for (const auto& [k, v] : in.headers) {
      std::string key = k;
      std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
      req.headers.emplace(std::move(key), v);
    }
    req.body = in.body;
    const auto res = api.handle(req);
    out.status = res.status;
    for (const auto& [k, v] : res.headers) out.set_header(k, v);
    if (!res.content_type.empty()) out.set_content(res.body, res.content_type);
  };
  impl_->http.Get(".*", handler);
  impl_->http.Post(".*", handler);
  impl_->http.Put(".*", handler);
  impl_->http.Delete(".*", handler);
  impl_->http.Patch(".*", handler);
  impl_->http.Options(".*", handler);
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

bool Server::is_running() const { return impl_->http.is_running(); }

}  // namespace cw::service
