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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cw/store.hpp"

namespace cw::service {

/// Transport-neutral request. `path` is already percent-decoded; header
/// names are lowercase.
struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

struct ApiOptions {
  /// Origins allowed for CORS; "*" allows any.
  std::vector<std::string> cors_origins;
};

/// Comma-separated origin list, as found in CW_CORS_ORIGINS.
std::vector<std::string> parse_origin_list(std::string_view text);

/// HTTP API over a store. Reads work on snapshots; writes go through the
/// store's single writer.
class Api {
 public:
  explicit Api(Store& store, ApiOptions options = {});

  [[nodiscard]] Response handle(const Request& request) const;

 private:
  Response route(const Request& request) const;

  Store& store_;
  ApiOptions options_;
};

/// Binds an Api to an HTTP listener.
class Server {
 public:
  explicit Server(const Api& api);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  bool listen();
  void stop();
  [[nodiscard]] bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cw::service
