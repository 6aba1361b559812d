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

#ifndef LDAF_RDF_TERM_HPP
#define LDAF_RDF_TERM_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ldaf::rdf {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";

inline const std::string kRdfType = std::string(kRdf) + "type";
inline const std::string kRdfProperty = std::string(kRdf) + "Property";
inline const std::string kRdfLangString = std::string(kRdf) + "langString";
inline const std::string kRdfsLabel = std::string(kRdfs) + "label";
inline const std::string kRdfsComment = std::string(kRdfs) + "comment";
inline const std::string kRdfsClass = std::string(kRdfs) + "Class";
inline const std::string kXsdString = std::string(kXsd) + "string";
inline const std::string kXsdInteger = std::string(kXsd) + "integer";
inline const std::string kXsdDecimal = std::string(kXsd) + "decimal";
inline const std::string kXsdDouble = std::string(kXsd) + "double";
inline const std::string kXsdBoolean = std::string(kXsd) + "boolean";
inline const std::string kOwlObjectProperty = std::string(kOwl) + "ObjectProperty";
inline const std::string kOwlDatatypeProperty = std::string(kOwl) + "DatatypeProperty";
inline const std::string kOwlClass = std::string(kOwl) + "Class";
inline const std::string kFoafDepiction = std::string(kFoaf) + "depiction";
}  // namespace vocab

/// True when `text` starts with a URI scheme followed by ':'.
inline bool is_absolute_iri(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(text[0])) return false;
  for (std::size_t i = 1; i < text.size(); ++i) {
    char c = text[i];
    if (c == ':') return true;
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
  }
  return false;
}

/// An absolute IRI. Construction validates the scheme.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string text) : text_(std::move(text)) {
    if (!is_absolute_iri(text_)) throw std::invalid_argument("not an absolute IRI: " + text_);
  }

  const std::string& str() const noexcept { return text_; }

  friend bool operator==(const Iri&, const Iri&) = default;
  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string text_;
};

/// An RDF literal. The datatype is always set; `lang` only for rdf:langString.
class Literal {
 public:
  Literal() : datatype_(vocab::kXsdString) {}
  explicit Literal(std::string lexical, std::string datatype = vocab::kXsdString)
      : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
    if (datatype_.empty()) throw std::invalid_argument("literal datatype must not be empty");
    if (datatype_ == vocab::kRdfLangString)
      throw std::invalid_argument("language-tagged literal needs a tag");
  }

  static Literal tagged(std::string lexical, std::string lang) {
    if (lang.empty()) throw std::invalid_argument("empty language tag");
    Literal lit;
    lit.lexical_ = std::move(lexical);
    lit.datatype_ = vocab::kRdfLangString;
    lit.lang_ = std::move(lang);
    return lit;
  }

  const std::string& lexical() const noexcept { return lexical_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& lang() const noexcept { return lang_; }
  bool has_lang() const noexcept { return !lang_.empty(); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;

 private:
  std::string lexical_;
  std::string datatype_;
  std::string lang_;
};

/// Either an IRI or a literal. Blank nodes do not exist here; parsers skolemize them.
///
/// Ordering puts literals before IRIs, then compares component-wise.
class Term {
 public:
  Term() = default;
  Term(Iri iri) : is_iri_(true), iri_(std::move(iri)) {}  // NOLINT(google-explicit-constructor)
  Term(Literal lit) : is_iri_(false), literal_(std::move(lit)) {}  // NOLINT

  static Term iri(std::string text) { return Term(Iri(std::move(text))); }
  static Term literal(std::string lexical, std::string datatype = vocab::kXsdString) {
    return Term(Literal(std::move(lexical), std::move(datatype)));
  }

  bool is_iri() const noexcept { return is_iri_; }
  bool is_literal() const noexcept { return !is_iri_; }

  const Iri& as_iri() const {
    if (!is_iri_) throw std::logic_error("term is not an IRI");
    return iri_;
  }
  const Literal& as_literal() const {
    if (is_iri_) throw std::logic_error("term is not a literal");
    return literal_;
  }

  /// IRI text or literal lexical form.
  const std::string& text() const noexcept { return is_iri_ ? iri_.str() : literal_.lexical(); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.is_iri_ != b.is_iri_) return false;
    return a.is_iri_ ? a.iri_ == b.iri_ : a.literal_ == b.literal_;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.is_iri_ != b.is_iri_) return a.is_iri_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.is_iri_ ? a.iri_ <=> b.iri_ : a.literal_ <=> b.literal_;
  }

 private:
  bool is_iri_ = true;
  Iri iri_;
  Literal literal_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// N-Triples style rendering, used in diagnostics and test output.
inline std::string to_ntriples(const Term& term) {
  if (term.is_iri()) return "<" + term.as_iri().str() + ">";
  const Literal& lit = term.as_literal();
  std::string out = "\"";
  for (char c : lit.lexical()) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  if (lit.has_lang()) return out + "@" + lit.lang();
  return out + "^^<" + lit.datatype() + ">";
}

inline std::string to_ntriples(const Triple& t) {
  return to_ntriples(Term(t.subject)) + " " + to_ntriples(Term(t.predicate)) + " " +
         to_ntriples(t.object) + " .";
}

}  // namespace ldaf::rdf

template <>
struct std::hash<ldaf::rdf::Term> {
  std::size_t operator()(const ldaf::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.text());
    if (t.is_literal()) h ^= std::hash<std::string>{}(t.as_literal().datatype()) * 31 + 7;
    return h;
  }
};

#endif  // LDAF_RDF_TERM_HPP
