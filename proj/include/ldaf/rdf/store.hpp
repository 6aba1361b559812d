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

#ifndef LDAF_RDF_STORE_HPP
#define LDAF_RDF_STORE_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/turtle.hpp"

namespace ldaf::rdf {

namespace fs = std::filesystem;

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Percent-encodes every byte outside the RFC 3986 unreserved set.
inline std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (detail::is_alpha(c) || detail::is_digit(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += c;
    } else {
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    }
  }
  return out;
}

inline std::string percent_decode(std::string_view text) {
  std::string out;
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      int hi = hex(text[i + 1]), lo = hex(text[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
        continue;
      }
    }
    out += text[i];
  }
  return out;
}

inline fs::path graph_file(const fs::path& data_dir, const Iri& graph_name) {
  return data_dir / (percent_encode(graph_name.str()) + ".ttl");
}

/// Writes `content` to a sibling temporary file and renames it over `target`.
inline void write_atomically(const fs::path& target, std::string_view content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw StoreError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw StoreError("cannot rename onto " + target.string());
  }
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void save_prefixes(const Dataset& dataset, const fs::path& data_dir) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [p, ns] : dataset.prefixes()) j[p] = ns;
  write_atomically(data_dir / "prefixes.json", j.dump(2) + "\n");
}

/// Persists one named graph as `<data_dir>/<percent-encoded name>.ttl`.
inline void save_graph(const Dataset& dataset, const Iri& name, const fs::path& data_dir) {
  write_atomically(graph_file(data_dir, name), serialize_turtle(dataset.graph(name), dataset.prefixes()));
}

inline void save_dataset(const Dataset& dataset, const fs::path& data_dir) {
  save_prefixes(dataset, data_dir);
  for (const auto& [name, graph] : dataset.graphs()) save_graph(dataset, name, data_dir);
}

/// Rebuilds a dataset from every `.ttl` file in `data_dir` plus `prefixes.json`.
inline Dataset load_dataset(const fs::path& data_dir) {
  if (!fs::is_directory(data_dir)) throw StoreError("data directory does not exist: " + data_dir.string());
  Dataset dataset;
  fs::path prefix_file = data_dir / "prefixes.json";
  if (fs::exists(prefix_file)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(prefix_file));
    } catch (const nlohmann::json::exception& e) {
      throw StoreError("prefixes.json: " + std::string(e.what()));
    }
    if (!j.is_object()) throw StoreError("prefixes.json: expected a JSON object");
    PrefixMap prefixes;
    for (auto& [p, ns] : j.items()) {
      if (!ns.is_string()) throw StoreError("prefixes.json: namespace for '" + p + "' is not a string");
      prefixes[p] = ns.get<std::string>();
    }
    dataset.set_prefixes(std::move(prefixes));
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(data_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ttl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    std::string name = percent_decode(file.stem().string());
    if (!is_absolute_iri(name)) throw StoreError(file.filename().string() + ": file name is not an encoded graph IRI");
    Graph& graph = dataset.ensure_graph(Iri(name));
    try {
      graph.insert_all(parse_turtle(read_file(file), name));
    } catch (const ParseError& e) {
      throw StoreError(file.filename().string() + ": " + e.what());
    }
  }
  return dataset;
}

}  // namespace ldaf::rdf

#endif  // LDAF_RDF_STORE_HPP
