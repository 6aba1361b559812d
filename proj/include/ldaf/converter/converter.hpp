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

#ifndef LDAF_CONVERTER_CONVERTER_HPP
#define LDAF_CONVERTER_CONVERTER_HPP

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldaf/converter/keymap.hpp"
#include "ldaf/converter/resource_object.hpp"
#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/turtle.hpp"

namespace ldaf::converter {

using rdf::Literal;
using rdf::Term;
using rdf::Triple;

/// Malformed JSON input; `pointer` is a JSON pointer to the offending value.
class ConversionError : public std::runtime_error {
 public:
  ConversionError(const std::string& message, std::string pointer)
      : std::runtime_error(message + " at '" + pointer + "'"), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

namespace detail {

inline std::string json_pointer_escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

inline bool fits_int64_canonically(const std::string& lexical, std::int64_t& out) {
  if (lexical.empty()) return false;
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(lexical.c_str(), &end, 10);
  if (errno != 0 || end != lexical.c_str() + lexical.size()) return false;
  if (std::to_string(v) != lexical) return false;
  out = v;
  return true;
}

inline bool fits_double_canonically(const std::string& lexical, double& out) {
  if (!rdf::detail::is_decimal_lexical(lexical)) return false;
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(lexical.c_str(), &end);
  if (errno != 0 || end != lexical.c_str() + lexical.size()) return false;
  if (Json(v).dump() != lexical) return false;
  out = v;
  return true;
}

}  // namespace detail

/// JSON form of a literal: plain scalar when that inverts exactly, else a TaggedLiteral.
inline Value literal_to_value(const Literal& lit) {
  const std::string& dt = lit.datatype();
  const std::string& lex = lit.lexical();
  if (lit.has_lang()) return Value{TaggedLiteral{lex, lit.lang(), std::nullopt}};
  if (dt == rdf::vocab::kXsdString) return Value{Scalar(lex)};
  if (dt == rdf::vocab::kXsdInteger) {
    std::int64_t v;
    if (detail::fits_int64_canonically(lex, v)) return Value{Scalar(v)};
  } else if (dt == rdf::vocab::kXsdDecimal) {
    double v;
    if (detail::fits_double_canonically(lex, v)) return Value{Scalar(v)};
  } else if (dt == rdf::vocab::kXsdBoolean) {
    if (lex == "true" || lex == "false") return Value{Scalar(lex == "true")};
  }
  return Value{TaggedLiteral{lex, std::nullopt, dt}};
}

inline Reference make_reference(const rdf::Iri& iri, const std::string& base_url) {
  return Reference{iri.str(), path_of(iri.str(), base_url), localname(iri.str())};
}

namespace detail {

class GraphToTree {
 public:
  GraphToTree(std::span<const rdf::Graph* const> graphs, const KeyMap& keymap, const std::string& base_url)
      : graphs_(graphs), keymap_(keymap), base_url_(base_url) {}

  ResourceObject build(const rdf::Iri& node, int depth) {
    ResourceObject obj;
    obj.uri = node.str();
    obj.path = path_of(node.str(), base_url_);
    obj.localname = localname(node.str());
    on_path_.insert(node);
    auto triples = rdf::match_union(graphs_, rdf::TriplePattern{node, std::nullopt, std::nullopt});
    for (std::size_t i = 0; i < triples.size();) {
      std::size_t j = i;
      ValueList values;
      while (j < triples.size() && triples[j].predicate == triples[i].predicate) {
        values.push_back(object_value(triples[j].object, depth));
        ++j;
      }
      std::string key = keymap_.key_for(triples[i].predicate);
      if (values.size() == 1) obj.properties.emplace(std::move(key), std::move(values.front()));
      else obj.properties.emplace(std::move(key), Value{std::move(values)});
      i = j;
    }
    on_path_.erase(node);
    return obj;
  }

 private:
  Value object_value(const Term& object, int depth) {
    if (object.is_literal()) return literal_to_value(object.as_literal());
    const rdf::Iri& iri = object.as_iri();
    if (depth > 0 && !on_path_.contains(iri)) return Value{Box<ResourceObject>(build(iri, depth - 1))};
    return Value{make_reference(iri, base_url_)};
  }

  std::span<const rdf::Graph* const> graphs_;
  const KeyMap& keymap_;
  const std::string& base_url_;
  std::set<rdf::Iri> on_path_;
};

}  // namespace detail

/// Nested object for `start` over the union of `graphs`, expanded `depth` levels.
///
/// Objects already on the current path become references, so cycles terminate.
/// The root carries `_incoming`: every (s, p, start) grouped by the key of p.
inline ResourceObject rdf_to_json(std::span<const rdf::Graph* const> graphs, const rdf::Iri& start, int depth,
                                  const KeyMap& keymap, const std::string& base_url) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  detail::GraphToTree walker(graphs, keymap, base_url);
  ResourceObject root = walker.build(start, depth);
  std::map<std::string, std::vector<Reference>> incoming;
  for (const Triple& t : rdf::match_union(graphs, rdf::TriplePattern{std::nullopt, std::nullopt, Term(start)}))
    incoming[keymap.key_for(t.predicate)].push_back(make_reference(t.subject, base_url));
  for (auto& [key, refs] : incoming) std::sort(refs.begin(), refs.end());
  root.incoming = std::move(incoming);
  return root;
}

inline bool is_plain_key(const std::string& key) {
  if (key.empty()) return false;
  auto first = key[0];
  if (!(rdf::detail::is_alpha(first) || first == '_')) return false;
  for (char c : key)
    if (!(rdf::detail::is_alpha(c) || rdf::detail::is_digit(c) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

struct ConvertOptions {
  /// Replaces the root's `uri`/`path` as the root subject.
  std::optional<rdf::Iri> subject;
  /// When false, nested objects carrying a `uri` or `path` only produce the linking triple.
  bool expand_identified_nested = true;
  /// Mints IRIs for nested objects without `uri`/`path`; without it those are errors.
  std::function<rdf::Iri()> mint;
  /// Receives predicates registered for previously unknown keys.
  std::vector<rdf::Iri>* registered = nullptr;
};

namespace detail {

class TreeToGraph {
 public:
  TreeToGraph(KeyMap& keymap, const std::string& base_url, const ConvertOptions& options)
      : keymap_(keymap), base_url_(base_url), options_(options) {}

  std::set<Triple> run(const Json& object) {
    if (!object.is_object()) throw ConversionError("expected a JSON object", "");
    rdf::Iri subject = options_.subject ? *options_.subject : identify(object, "");
    emit_properties(subject, object, "");
    return std::move(out_);
  }

  rdf::Iri predicate_for(const std::string& key, const std::string& pointer) {
    if (auto known = keymap_.find(key)) return *known;
    if (!is_plain_key(key)) throw ConversionError("invalid property key '" + key + "'", pointer);
    rdf::Iri iri(keymap_.fallback_namespace() + key);
    if (!keymap_.add(iri.str(), key)) throw ConversionError("key '" + key + "' conflicts with the key map", pointer);
    if (options_.registered) options_.registered->push_back(iri);
    return iri;
  }

 private:
  static bool is_identified(const Json& object) { return object.contains("uri") || object.contains("path"); }

  static bool is_tagged_literal(const Json& object) {
    if (!object.contains("value") || !(object.contains("lang") || object.contains("datatype"))) return false;
    for (auto& [k, v] : object.items())
      if (k != "value" && k != "lang" && k != "datatype") return false;
    return true;
  }

  rdf::Iri identify(const Json& object, const std::string& pointer) {
    auto text_field = [&](const char* name) -> std::optional<std::string> {
      auto it = object.find(name);
      if (it == object.end()) return std::nullopt;
      if (!it->is_string()) throw ConversionError(std::string("'") + name + "' must be a string", pointer + "/" + name);
      return it->get<std::string>();
    };
    std::string iri;
    if (auto uri = text_field("uri")) {
      iri = *uri;
      if (!rdf::is_absolute_iri(iri)) throw ConversionError("'uri' is not an absolute IRI", pointer + "/uri");
    } else if (auto path = text_field("path")) {
      iri = resolve_path(*path, base_url_);
      if (!rdf::is_absolute_iri(iri)) throw ConversionError("'path' does not resolve to an IRI", pointer + "/path");
    } else if (options_.mint) {
      return options_.mint();
    } else {
      throw ConversionError("object has neither 'uri' nor 'path'", pointer);
    }
    return rdf::Iri(iri);
  }

  void emit_properties(const rdf::Iri& subject, const Json& object, const std::string& pointer) {
    for (auto& [key, value] : object.items()) {
      if (is_reserved_key(key)) continue;
      std::string where = pointer + "/" + json_pointer_escape(key);
      if (value.is_null()) continue;
      rdf::Iri predicate = predicate_for(key, where);
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          std::string item = where + "/" + std::to_string(i);
          if (value[i].is_array()) throw ConversionError("a list must not contain a list", item);
          if (value[i].is_null()) throw ConversionError("a list must not contain null", item);
          emit(subject, predicate, value[i], item);
        }
      } else {
        emit(subject, predicate, value, where);
      }
    }
  }

  void emit(const rdf::Iri& subject, const rdf::Iri& predicate, const Json& value, const std::string& pointer) {
    out_.insert(Triple{subject, predicate, object_term(value, pointer)});
  }

  Term object_term(const Json& value, const std::string& pointer) {
    switch (value.type()) {
      case Json::value_t::string:
        return Term(Literal(value.get<std::string>()));
      case Json::value_t::boolean:
        return Term(Literal(value.get<bool>() ? "true" : "false", rdf::vocab::kXsdBoolean));
      case Json::value_t::number_integer:
      case Json::value_t::number_unsigned:
        return Term(Literal(value.dump(), rdf::vocab::kXsdInteger));
      case Json::value_t::number_float:
        return Term(Literal(value.dump(), rdf::vocab::kXsdDecimal));
      case Json::value_t::object:
        break;
      default:
        throw ConversionError("unsupported JSON value", pointer);
    }
    if (!is_identified(value) && is_tagged_literal(value)) return tagged_literal(value, pointer);
    rdf::Iri iri = identify(value, pointer);
    if (!is_identified(value) || options_.expand_identified_nested) emit_properties(iri, value, pointer);
    return Term(iri);
  }

  static Term tagged_literal(const Json& value, const std::string& pointer) {
    if (value.contains("lang") && value.contains("datatype"))
      throw ConversionError("tagged literal has both 'lang' and 'datatype'", pointer);
    const Json& text = value["value"];
    if (!text.is_string()) throw ConversionError("tagged literal 'value' must be a string", pointer + "/value");
    if (value.contains("lang")) {
      const Json& lang = value["lang"];
      if (!lang.is_string() || lang.get<std::string>().empty())
        throw ConversionError("'lang' must be a non-empty string", pointer + "/lang");
      return Term(Literal::tagged(text.get<std::string>(), lang.get<std::string>()));
    }
    const Json& dt = value["datatype"];
    if (!dt.is_string() || !rdf::is_absolute_iri(dt.get<std::string>()))
      throw ConversionError("'datatype' must be an absolute IRI", pointer + "/datatype");
    if (dt.get<std::string>() == rdf::vocab::kRdfLangString)
      throw ConversionError("rdf:langString needs 'lang'", pointer + "/datatype");
    return Term(Literal(text.get<std::string>(), dt.get<std::string>()));
  }

  KeyMap& keymap_;
  const std::string& base_url_;
  const ConvertOptions& options_;
  std::set<Triple> out_;
};

}  // namespace detail

/// Triples described by a JSON resource object. Unknown plain keys are registered
/// in `keymap` under its fallback namespace; `null` values produce nothing.
inline std::set<Triple> json_to_rdf(const Json& object, KeyMap& keymap, const std::string& base_url,
                                    const ConvertOptions& options = {}) {
  return detail::TreeToGraph(keymap, base_url, options).run(object);
}

/// Predicate for a JSON key, registering it like json_to_rdf would.
inline rdf::Iri predicate_for_key(const std::string& key, KeyMap& keymap, std::vector<rdf::Iri>* registered = nullptr) {
  static const std::string kNoBase;
  ConvertOptions options;
  options.registered = registered;
  return detail::TreeToGraph(keymap, kNoBase, options).predicate_for(key, "/" + detail::json_pointer_escape(key));
}

}  // namespace ldaf::converter

#endif  // LDAF_CONVERTER_CONVERTER_HPP
