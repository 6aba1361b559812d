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

#ifndef LDAF_RDF_TURTLE_HPP
#define LDAF_RDF_TURTLE_HPP

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/term.hpp"

namespace ldaf::rdf {

/// Syntax error with a 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_name_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

inline std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  bool trailing = false;
  while (i <= path.size()) {
    std::size_t j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    std::string seg(path.substr(i, j - i));
    trailing = false;
    if (seg == ".") {
      trailing = true;
    } else if (seg == "..") {
      if (out.size() > 1) out.pop_back();
      trailing = true;
    } else {
      out.push_back(seg);
    }
    i = j + 1;
  }
  std::string joined;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k) joined += '/';
    joined += out[k];
  }
  if (trailing) joined += '/';
  return joined;
}

}  // namespace detail

/// Resolves a (possibly relative) IRI reference against an absolute base.
inline std::string resolve_iri(std::string_view base, std::string_view ref) {
  if (is_absolute_iri(ref)) return std::string(ref);
  std::string_view b = base;
  if (auto h = b.find('#'); h != std::string_view::npos) b = b.substr(0, h);
  if (ref.empty()) return std::string(b);
  if (ref[0] == '#') return std::string(b) + std::string(ref);
  std::size_t colon = b.find(':');
  std::string scheme(b.substr(0, colon + 1));
  std::string_view rest = b.substr(colon + 1);
  std::string authority;
  std::string_view path = rest;
  if (rest.starts_with("//")) {
    std::size_t slash = rest.find_first_of("/?", 2);
    authority = std::string(rest.substr(0, slash == std::string_view::npos ? rest.size() : slash));
    path = slash == std::string_view::npos ? std::string_view() : rest.substr(slash);
  }
  if (ref.starts_with("//")) return scheme + std::string(ref);
  if (ref[0] == '?') {
    auto q = path.find('?');
    return scheme + authority + std::string(path.substr(0, q)) + std::string(ref);
  }
  if (ref[0] == '/') return scheme + authority + detail::remove_dot_segments(ref);
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::string dir;
  if (auto s = path.rfind('/'); s != std::string_view::npos) dir = std::string(path.substr(0, s + 1));
  else if (!authority.empty()) dir = "/";
  return scheme + authority + detail::remove_dot_segments(dir + std::string(ref));
}

namespace detail {

class TurtleParser {
 public:
  TurtleParser(std::string_view input, std::string base) : in_(input), base_(std::move(base)) {
    std::random_device rd;
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(rd()));
    skolem_suffix_ = buf;
    skolem_root_ = base_;
    while (!skolem_root_.empty() && skolem_root_.back() == '/') skolem_root_.pop_back();
    skolem_root_ += "/.well-known/genid/";
  }

  std::set<Triple> parse() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(out_);
  }

  PrefixMap& prefixes() { return prefixes_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw ParseError("unsupported Turtle feature: " + what, line_, col_);
  }

  bool at_end() const { return pos_ >= in_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0'; }
  char get() {
    char c = in_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void expect(char c) {
    if (peek() != c || at_end()) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  bool keyword_ahead(std::string_view kw) const {
    if (in_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = in_[pos_ + i];
      if (std::tolower(static_cast<unsigned char>(a)) != std::tolower(static_cast<unsigned char>(kw[i]))) return false;
    }
    char after = peek(kw.size());
    return after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<';
  }

  void statement() {
    if (peek() == '@') {
      get();
      std::string word;
      while (is_alpha(peek())) word += get();
      if (word == "prefix") {
        prefix_directive();
      } else if (word == "base") {
        base_directive();
      } else {
        fail("unknown directive @" + word);
      }
      skip_ws();
      expect('.');
      return;
    }
    if (keyword_ahead("PREFIX")) {
      for (int i = 0; i < 6; ++i) get();
      prefix_directive();
      return;
    }
    if (keyword_ahead("BASE")) {
      for (int i = 0; i < 4; ++i) get();
      base_directive();
      return;
    }
    Iri subject = subject_term();
    skip_ws();
    predicate_object_list(subject);
    skip_ws();
    expect('.');
  }

  void prefix_directive() {
    skip_ws();
    std::string prefix;
    while (is_name_char(peek()) || peek() == '.') prefix += get();
    if (peek() != ':') fail("expected prefix name followed by ':'");
    get();
    skip_ws();
    if (peek() != '<') fail("expected IRI in prefix directive");
    prefixes_[prefix] = iri_ref();
  }

  void base_directive() {
    skip_ws();
    if (peek() != '<') fail("expected IRI in base directive");
    base_ = iri_ref();
  }

  Iri subject_term() {
    char c = peek();
    if (c == '[') unsupported("anonymous blank node '[ ]'");
    if (c == '(') unsupported("collection '( )'");
    if (c == '"' || c == '\'' || is_digit(c) || c == '+' || c == '-') fail("literal not allowed as subject");
    if (c == '_' && peek(1) == ':') return blank_node();
    if (c == '<') return Iri(iri_ref());
    return Iri(prefixed_name());
  }

  void predicate_object_list(const Iri& subject) {
    for (;;) {
      Iri predicate = verb();
      skip_ws();
      for (;;) {
        out_.insert(Triple{subject, predicate, object_term()});
        skip_ws();
        if (peek() != ',') break;
        get();
        skip_ws();
      }
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      if (peek() == '.' || peek() == ']' || at_end()) return;
    }
  }

  Iri verb() {
    if (peek() == 'a') {
      char after = peek(1);
      if (after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<' || after == '"') {
        get();
        return Iri(vocab::kRdfType);
      }
    }
    if (peek() == '_' && peek(1) == ':') fail("blank node not allowed as predicate");
    if (peek() == '<') return Iri(iri_ref());
    if (peek() == '[' || peek() == '(' || peek() == '"') fail("expected predicate");
    return Iri(prefixed_name());
  }

  Term object_term() {
    char c = peek();
    if (c == '[') unsupported("anonymous blank node '[ ]'");
    if (c == '(') unsupported("collection '( )'");
    if (c == '<') return Term(Iri(iri_ref()));
    if (c == '_' && peek(1) == ':') return Term(blank_node());
    if (c == '"' || c == '\'') return literal();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) return number();
    if (in_.substr(pos_).starts_with("true") && !is_name_char(peek(4)) && peek(4) != ':') {
      for (int i = 0; i < 4; ++i) get();
      return Term(Literal("true", vocab::kXsdBoolean));
    }
    if (in_.substr(pos_).starts_with("false") && !is_name_char(peek(5)) && peek(5) != ':') {
      for (int i = 0; i < 5; ++i) get();
      return Term(Literal("false", vocab::kXsdBoolean));
    }
    return Term(Iri(prefixed_name()));
  }

  Iri blank_node() {
    get();
    get();
    std::string label;
    while (is_name_char(peek()) || (peek() == '.' && is_name_char(peek(1)))) label += get();
    if (label.empty()) fail("empty blank node label");
    auto it = bnodes_.find(label);
    if (it == bnodes_.end()) it = bnodes_.emplace(label, Iri(skolem_root_ + label + "-" + skolem_suffix_)).first;
    return it->second;
  }

  std::uint32_t hex_escape(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char h = peek();
      int v;
      if (is_digit(h)) v = h - '0';
      else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
      else fail("invalid hex escape");
      get();
      cp = cp * 16 + static_cast<std::uint32_t>(v);
    }
    return cp;
  }

  std::string iri_ref() {
    expect('<');
    std::string text;
    for (;;) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = at_end() ? '\0' : get();
        if (e == 'u') detail::append_utf8(text, hex_escape(4));
        else if (e == 'U') detail::append_utf8(text, hex_escape(8));
        else fail("invalid escape in IRI");
        continue;
      }
      if (c == ' ' || c == '\n' || c == '<' || c == '"') fail("invalid character in IRI");
      text += c;
    }
    std::string resolved = resolve_iri(base_, text);
    if (!is_absolute_iri(resolved)) fail("IRI is not absolute: " + resolved);
    return resolved;
  }

  std::string prefixed_name() {
    std::size_t start_line = line_, start_col = col_;
    std::string prefix;
    while (is_name_char(peek()) || (peek() == '.' && (is_name_char(peek(1)) || peek(1) == ':'))) prefix += get();
    if (peek() != ':') {
      if (prefix.empty()) fail(std::string("unexpected character '") + peek() + "'");
      throw ParseError("expected prefixed name, found '" + prefix + "'", start_line, start_col);
    }
    get();
    std::string local;
    for (;;) {
      char c = peek();
      if (is_name_char(c) || c == ':' || c == '%') {
        local += get();
      } else if (c == '.' && (is_name_char(peek(1)) || peek(1) == ':' || peek(1) == '%' || peek(1) == '.')) {
        local += get();
      } else if (c == '\\' && pos_ + 1 < in_.size()) {
        get();
        local += get();
      } else {
        break;
      }
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw ParseError("undefined prefix '" + prefix + ":'", start_line, start_col);
    return it->second + local;
  }

  Term literal() {
    char quote = peek();
    if (peek(1) == quote && peek(2) == quote) unsupported("multiline string literal");
    get();
    std::string lex;
    for (;;) {
      if (at_end()) fail("unterminated string literal");
      char c = get();
      if (c == quote) break;
      if (c == '\n' || c == '\r') fail("line break in string literal");
      if (c == '\\') {
        if (at_end()) fail("unterminated string literal");
        char e = get();
        switch (e) {
          case 't': lex += '\t'; break;
          case 'b': lex += '\b'; break;
          case 'n': lex += '\n'; break;
          case 'r': lex += '\r'; break;
          case 'f': lex += '\f'; break;
          case '"': lex += '"'; break;
          case '\'': lex += '\''; break;
          case '\\': lex += '\\'; break;
          case 'u': detail::append_utf8(lex, hex_escape(4)); break;
          case 'U': detail::append_utf8(lex, hex_escape(8)); break;
          default: fail(std::string("invalid escape '\\") + e + "'");
        }
        continue;
      }
      lex += c;
    }
    if (peek() == '@') {
      get();
      std::string lang;
      while (is_alpha(peek()) || (!lang.empty() && (peek() == '-' || is_digit(peek())))) lang += get();
      if (lang.empty()) fail("empty language tag");
      return Term(Literal::tagged(std::move(lex), std::move(lang)));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      std::string dt = peek() == '<' ? iri_ref() : prefixed_name();
      return Term(Literal(std::move(lex), std::move(dt)));
    }
    return Term(Literal(std::move(lex)));
  }

  Term number() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += get();
    while (is_digit(peek())) lex += get();
    bool decimal = false;
    if (peek() == '.' && is_digit(peek(1))) {
      decimal = true;
      lex += get();
      while (is_digit(peek())) lex += get();
    }
    if (peek() == 'e' || peek() == 'E') unsupported("double literal shorthand");
    if (lex.empty() || lex == "+" || lex == "-") fail("malformed number");
    return Term(Literal(std::move(lex), decimal ? vocab::kXsdDecimal : vocab::kXsdInteger));
  }

  std::string_view in_;
  std::string base_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  PrefixMap prefixes_;
  std::map<std::string, Iri> bnodes_;
  std::string skolem_root_;
  std::string skolem_suffix_;
  std::set<Triple> out_;
};

inline bool is_serializable_local(std::string_view local) {
  if (local.empty()) return true;
  auto ok = [](char c) { return is_alpha(c) || is_digit(c) || c == '_'; };
  if (!ok(local.front())) return false;
  for (char c : local)
    if (!(ok(c) || c == '-' || c == '.')) return false;
  return local.back() != '.';
}

inline bool is_valid_prefix(std::string_view p) {
  if (p.empty()) return true;
  if (!is_alpha(p.front())) return false;
  for (char c : p)
    if (!(is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.')) return false;
  return p.back() != '.';
}

inline void append_escaped_string(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

inline bool is_integer_lexical(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!is_digit(s[i])) return false;
  return true;
}

inline bool is_decimal_lexical(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  std::size_t dot = s.find('.', i);
  if (dot == std::string_view::npos || dot + 1 == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (k != dot && !is_digit(s[k])) return false;
  return true;
}

}  // namespace detail

/// Parses the supported Turtle subset. Blank-node labels become skolem IRIs under `base`.
/// Prefix declarations found in the document are written to `declared` when given.
inline std::set<Triple> parse_turtle(std::string_view input, const std::string& base,
                                     PrefixMap* declared = nullptr) {
  detail::TurtleParser parser(input, base);
  auto triples = parser.parse();
  if (declared) {
    for (auto& [p, ns] : parser.prefixes()) (*declared)[p] = ns;
  }
  return triples;
}

/// Writes `iri` as a prefixed name when some namespace fits, else as `<iri>`.
inline std::string format_iri(const std::string& iri, const PrefixMap& prefixes) {
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : prefixes) {
    const auto& [prefix, ns] = entry;
    if (ns.empty() || !detail::is_valid_prefix(prefix) || !iri.starts_with(ns)) continue;
    if (!detail::is_serializable_local(std::string_view(iri).substr(ns.size()))) continue;
    if (!best || ns.size() > best->second.size()) best = &entry;
  }
  if (best) return best->first + ":" + iri.substr(best->second.size());
  std::string out = "<";
  for (char c : iri) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`' || c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(u));
      out += buf;
    } else {
      out += c;
    }
  }
  return out + ">";
}

inline std::string format_term(const Term& term, const PrefixMap& prefixes) {
  if (term.is_iri()) return format_iri(term.as_iri().str(), prefixes);
  const Literal& lit = term.as_literal();
  const std::string& lex = lit.lexical();
  const std::string& dt = lit.datatype();
  if (dt == vocab::kXsdInteger && detail::is_integer_lexical(lex)) return lex;
  if (dt == vocab::kXsdDecimal && detail::is_decimal_lexical(lex)) return lex;
  if (dt == vocab::kXsdBoolean && (lex == "true" || lex == "false")) return lex;
  std::string out;
  detail::append_escaped_string(out, lex);
  if (lit.has_lang()) return out + "@" + lit.lang();
  if (dt == vocab::kXsdString) return out;
  return out + "^^" + format_iri(dt, prefixes);
}

/// Deterministic Turtle: sorted prefix directives, then one block per subject.
inline std::string serialize_turtle(const std::set<Triple>& triples, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [prefix, ns] : prefixes) {
    if (!detail::is_valid_prefix(prefix)) continue;
    out += "@prefix " + prefix + ": " + format_iri(ns, {}) + " .\n";
  }
  const Iri* subject = nullptr;
  const Iri* predicate = nullptr;
  for (const Triple& t : triples) {
    if (!subject || *subject != t.subject) {
      if (subject) out += " .\n";
      out += "\n" + format_iri(t.subject.str(), prefixes) + " ";
      out += t.predicate.str() == vocab::kRdfType ? std::string("a") : format_iri(t.predicate.str(), prefixes);
      out += " ";
    } else if (*predicate != t.predicate) {
      out += " ;\n    ";
      out += t.predicate.str() == vocab::kRdfType ? std::string("a") : format_iri(t.predicate.str(), prefixes);
      out += " ";
    } else {
      out += ", ";
    }
    out += format_term(t.object, prefixes);
    subject = &t.subject;
    predicate = &t.predicate;
  }
  if (subject) out += " .\n";
  return out;
}

inline std::string serialize_turtle(const Graph& graph, const PrefixMap& prefixes) {
  return serialize_turtle(graph.triples(), prefixes);
}

}  // namespace ldaf::rdf

#endif  // LDAF_RDF_TURTLE_HPP
