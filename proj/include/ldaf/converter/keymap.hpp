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

#ifndef LDAF_CONVERTER_KEYMAP_HPP
#define LDAF_CONVERTER_KEYMAP_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/term.hpp"

namespace ldaf::converter {

using rdf::Iri;

/// Keys with fixed meaning in a resource object; never used for properties.
inline constexpr std::array<std::string_view, 4> kReservedKeys = {"uri", "path", "localname", "_incoming"};

inline bool is_reserved_key(std::string_view key) {
  for (auto r : kReservedKeys)
    if (r == key) return true;
  return false;
}

/// Text after '#' when present, else after the last '/'.
inline std::string localname(std::string_view iri) {
  if (auto hash = iri.rfind('#'); hash != std::string_view::npos) return std::string(iri.substr(hash + 1));
  if (auto slash = iri.rfind('/'); slash != std::string_view::npos) return std::string(iri.substr(slash + 1));
  return std::string(iri);
}

/// The IRI with `base_url` stripped; the full IRI when it lies outside the base.
inline std::string path_of(std::string_view iri, std::string_view base_url) {
  if (!base_url.empty() && iri.starts_with(base_url)) {
    std::string_view rest = iri.substr(base_url.size());
    if (rest.empty() || rest[0] == '/' || rest[0] == '#' || rest[0] == '?') return std::string(rest);
  }
  return std::string(iri);
}

/// Inverse of path_of: absolute IRIs pass through, anything else is appended to the base.
inline std::string resolve_path(std::string_view path, std::string_view base_url) {
  if (rdf::is_absolute_iri(path)) return std::string(path);
  return std::string(base_url) + std::string(path);
}

/// Bidirectional key <-> predicate IRI table.
///
/// Predicates without a registered key are addressed by their full IRI, which
/// maps back to itself, so unregistered predicates still round-trip.
class KeyMap {
 public:
  KeyMap() : KeyMap("") {}
  explicit KeyMap(std::string fallback_ns) : fallback_ns_(std::move(fallback_ns)) {
    add(std::string(rdf::vocab::kRdfs) + "label", "label");
    add(rdf::vocab::kRdfType, "type");
    add(std::string(rdf::vocab::kRdfs) + "comment", "comment");
  }

  const std::string& fallback_namespace() const noexcept { return fallback_ns_; }

  /// Registers `key` <-> `iri`; false when either side is already taken.
  bool add(const std::string& iri, const std::string& key) {
    if (key.empty() || is_reserved_key(key)) return false;
    if (by_key_.contains(key) || by_iri_.contains(iri)) return false;
    by_key_.emplace(key, iri);
    by_iri_.emplace(iri, key);
    return true;
  }

  bool has_key(const std::string& key) const { return by_key_.contains(key); }
  bool has_iri(const std::string& iri) const { return by_iri_.contains(iri); }
  std::size_t size() const noexcept { return by_key_.size(); }
  const std::map<std::string, std::string>& entries() const noexcept { return by_key_; }

  /// JSON key used for `predicate`.
  std::string key_for(const Iri& predicate) const {
    auto it = by_iri_.find(predicate.str());
    return it == by_iri_.end() ? predicate.str() : it->second;
  }

  /// Predicate for `key` without registering anything; nullopt for unknown plain keys.
  std::optional<Iri> find(const std::string& key) const {
    if (auto it = by_key_.find(key); it != by_key_.end()) return Iri(it->second);
    if (rdf::is_absolute_iri(key)) return Iri(key);
    return std::nullopt;
  }

  friend bool operator==(const KeyMap&, const KeyMap&) = default;

 private:
  std::string fallback_ns_;
  std::map<std::string, std::string> by_key_;
  std::map<std::string, std::string> by_iri_;
};

/// Keys for every property declared or used in `ontology`.
///
/// Candidates are visited in IRI order. The first claimant of a localname keeps
/// it; later ones get `<prefix>_<localname>` from the longest matching
/// namespace, or their full IRI when no prefix fits.
inline KeyMap build_keymap(std::span<const rdf::Graph* const> ontology, const rdf::PrefixMap& prefixes,
                           std::string fallback_ns) {
  KeyMap keymap(std::move(fallback_ns));
  std::set<std::string> candidates;
  const std::set<std::string> property_classes = {rdf::vocab::kRdfProperty, rdf::vocab::kOwlObjectProperty,
                                                  rdf::vocab::kOwlDatatypeProperty};
  for (const rdf::Graph* g : ontology) {
    for (const rdf::Triple& t : *g) {
      candidates.insert(t.predicate.str());
      if (t.predicate.str() == rdf::vocab::kRdfType && t.object.is_iri() &&
          property_classes.contains(t.object.as_iri().str()))
        candidates.insert(t.subject.str());
    }
  }
  for (const std::string& iri : candidates) {
    if (keymap.has_iri(iri)) continue;
    std::string local = localname(iri);
    if (!local.empty() && keymap.add(iri, local)) continue;
    const std::string* best_prefix = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, ns] : prefixes) {
      if (!prefix.empty() && !ns.empty() && iri.starts_with(ns) && ns.size() > best_len) {
        best_prefix = &prefix;
        best_len = ns.size();
      }
    }
    if (best_prefix && !local.empty() && keymap.add(iri, *best_prefix + "_" + local)) continue;
    keymap.add(iri, iri);
  }
  return keymap;
}

inline KeyMap build_keymap(const rdf::Graph& ontology, const rdf::PrefixMap& prefixes, std::string fallback_ns) {
  const rdf::Graph* g = &ontology;
  return build_keymap(std::span<const rdf::Graph* const>(&g, 1), prefixes, std::move(fallback_ns));
}

}  // namespace ldaf::converter

#endif  // LDAF_CONVERTER_KEYMAP_HPP
