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

#ifndef LDAF_SERVER_CONFIG_HPP
#define LDAF_SERVER_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldaf/rdf/store.hpp"
#include "ldaf/rdf/term.hpp"

namespace ldaf::server {

namespace fs = std::filesystem;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One CRUD collection mounted at `/<path>`.
struct CollectionSpec {
  std::string path;
  std::optional<std::string> class_iri;
  std::optional<std::string> template_name;

  friend bool operator==(const CollectionSpec&, const CollectionSpec&) = default;
};

struct AppConfig {
  std::string base_url = "http://localhost:8080";
  int port = 8080;
  fs::path data_dir = "data";
  fs::path ontology_file;
  fs::path app_dir = ".";
  int default_page_size = 20;
  int session_ttl_minutes = 1440;
  std::int64_t upload_max_bytes = 5'000'000;
  std::int64_t max_body_bytes = 1'000'000;
  int max_depth = 3;
  std::vector<CollectionSpec> collections;

  std::string ontology_namespace() const { return base_url + "/ontology/"; }

  const CollectionSpec* find_collection(std::string_view path) const {
    for (const auto& c : collections)
      if (c.path == path) return &c;
    return nullptr;
  }
};

inline bool is_path_segment(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_'))
      return false;
  return true;
}

/// Paths that belong to built-in resources and cannot be collections.
inline bool is_builtin_segment(std::string_view s) {
  for (std::string_view b : {"ontology", "sparql", "search", "upload", "user", "graph", "app", "login", "logout",
                             "register", ".well-known"})
    if (s == b) return true;
  return false;
}

/// Throws ConfigError when `config` violates its invariants.
inline void validate(const AppConfig& config) {
  if (!rdf::is_absolute_iri(config.base_url)) throw ConfigError("base_url must be an absolute IRI");
  if (config.base_url.ends_with('/')) throw ConfigError("base_url must not end with '/'");
  if (config.port < 1 || config.port > 65535) throw ConfigError("port must be in 1-65535");
  if (config.default_page_size < 1) throw ConfigError("default_page_size must be at least 1");
  if (config.session_ttl_minutes < 1) throw ConfigError("session_ttl_minutes must be at least 1");
  if (config.upload_max_bytes < 1) throw ConfigError("upload_max_bytes must be at least 1");
  if (config.max_body_bytes < 1) throw ConfigError("max_body_bytes must be at least 1");
  if (config.max_depth < 0) throw ConfigError("max_depth must be non-negative");
  if (config.data_dir.empty()) throw ConfigError("data_dir must be set");
  std::vector<std::string> seen;
  for (const auto& c : config.collections) {
    if (!is_path_segment(c.path)) throw ConfigError("collection path '" + c.path + "' is not a single path segment");
    if (is_builtin_segment(c.path)) throw ConfigError("collection path '" + c.path + "' is reserved");
    for (const auto& s : seen)
      if (s == c.path) throw ConfigError("duplicate collection '" + c.path + "'");
    seen.push_back(c.path);
    if (c.class_iri && !rdf::is_absolute_iri(*c.class_iri))
      throw ConfigError("class of collection '" + c.path + "' is not an absolute IRI");
  }
}

/// Reads the JSON config form. Relative paths are resolved against `relative_to`.
inline AppConfig config_from_json(const nlohmann::json& j, const fs::path& relative_to = {}) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  AppConfig c;
  auto path_field = [&](const char* name, fs::path& out) {
    if (!j.contains(name)) return;
    fs::path p = j.at(name).get<std::string>();
    out = p.is_relative() && !relative_to.empty() ? relative_to / p : p;
  };
  try {
    c.base_url = j.value("base_url", c.base_url);
    c.port = j.value("port", c.port);
    path_field("data_dir", c.data_dir);
    path_field("ontology_file", c.ontology_file);
    path_field("app_dir", c.app_dir);
    if (!j.contains("data_dir") && !relative_to.empty()) c.data_dir = relative_to / c.data_dir;
    if (!j.contains("app_dir") && !relative_to.empty()) c.app_dir = relative_to;
    c.default_page_size = j.value("default_page_size", c.default_page_size);
    c.session_ttl_minutes = j.value("session_ttl_minutes", c.session_ttl_minutes);
    c.upload_max_bytes = j.value("upload_max_bytes", c.upload_max_bytes);
    c.max_body_bytes = j.value("max_body_bytes", c.max_body_bytes);
    c.max_depth = j.value("max_depth", c.max_depth);
    for (const auto& item : j.value("collections", nlohmann::json::array())) {
      CollectionSpec spec;
      if (item.is_string()) {
        spec.path = item.get<std::string>();
      } else {
        spec.path = item.at("path").get<std::string>();
        if (item.contains("class") && !item["class"].is_null()) spec.class_iri = item["class"].get<std::string>();
        if (item.contains("template") && !item["template"].is_null())
          spec.template_name = item["template"].get<std::string>();
      }
      c.collections.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  validate(c);
  return c;
}

inline nlohmann::json config_to_json(const AppConfig& c) {
  nlohmann::json j;
  j["base_url"] = c.base_url;
  j["port"] = c.port;
  j["data_dir"] = c.data_dir.string();
  j["ontology_file"] = c.ontology_file.string();
  j["app_dir"] = c.app_dir.string();
  j["default_page_size"] = c.default_page_size;
  j["session_ttl_minutes"] = c.session_ttl_minutes;
  j["upload_max_bytes"] = c.upload_max_bytes;
  j["max_body_bytes"] = c.max_body_bytes;
  j["max_depth"] = c.max_depth;
  j["collections"] = nlohmann::json::array();
  for (const auto& spec : c.collections) {
    nlohmann::json s = {{"path", spec.path}};
    if (spec.class_iri) s["class"] = *spec.class_iri;
    if (spec.template_name) s["template"] = *spec.template_name;
    j["collections"].push_back(std::move(s));
  }
  return j;
}

/// Loads a config file; relative paths inside it are taken relative to the file.
inline AppConfig load_config(const fs::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(rdf::read_file(file));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  } catch (const rdf::StoreError& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(j, file.parent_path());
}

}  // namespace ldaf::server

#endif  // LDAF_SERVER_CONFIG_HPP
