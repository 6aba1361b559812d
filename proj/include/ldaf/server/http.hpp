/*
 * Copyright 2026 The LDAF Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDAF_SERVER_HTTP_HPP
#define LDAF_SERVER_HTTP_HPP

#include <algorithm>
#include <atomic>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

#include <httplib.h>

#include "ldaf/server/app.hpp"

namespace ldaf::server {

/// Converts an httplib request. A multipart file field named `file` becomes the
/// body with its own content type; other multipart fields join the query parameters.
/// HEAD is answered as GET; to_httplib drops the body.
inline Request from_httplib(const httplib::Request& in) {
  Request r = make_request(in.method == "HEAD" ? "GET" : in.method, in.target);
  for (const auto& [k, v] : in.headers) r.headers[k] = v;
  r.body = in.body;
  if (in.is_multipart_form_data()) {
    r.body.clear();
    for (const auto& [name, part] : in.files) {
      if (name == "file" && !part.filename.empty()) {
        r.body = part.content;
        r.headers["Content-Type"] = part.content_type;
      } else if (!r.query.contains(name)) {
        r.query[name] = part.content;
      }
    }
  }
  return r;
}

inline void to_httplib(const Response& in, httplib::Response& out, bool head) {
  out.status = in.status;
  std::string type = "text/plain";
  for (const auto& [k, v] : in.headers) {
    if (!CaseInsensitiveLess{}(k, "Content-Type") && !CaseInsensitiveLess{}("Content-Type", k)) type = v;
    else out.set_header(k, v);
  }
  if (!in.body.empty() || in.headers.contains("Content-Type")) out.set_content(head ? std::string() : in.body, type);
}

/// Serves an App over HTTP with cpp-httplib.
class HttpServer {
 public:
  explicit HttpServer(App& app) : app_(app) {
    const AppConfig& c = app_.config();
    server_.set_payload_max_length(static_cast<std::size_t>(std::max(c.upload_max_bytes, c.max_body_bytes)) + 65536);
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      to_httplib(app_.handle(from_httplib(req)), res, req.method == "HEAD");
    };
    server_.Get(".*", handler);
    server_.Post(".*", handler);
    server_.Put(".*", handler);
    server_.Patch(".*", handler);
    server_.Delete(".*", handler);
    server_.Options(".*", handler);
  }

  ~HttpServer() { stop(); }

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port) {
    int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
  }

  /// Serves on the calling thread until stop().
  void listen() { server_.listen_after_bind(); }

  /// Serves on a background thread.
  void start() {
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void stop() {
    if (server_.is_running()) server_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  App& app_;
  httplib::Server server_;
  std::thread thread_;
};

}  // namespace ldaf::server

#endif  // LDAF_SERVER_HTTP_HPP
