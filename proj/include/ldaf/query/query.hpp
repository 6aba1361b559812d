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

#ifndef LDAF_QUERY_QUERY_HPP
#define LDAF_QUERY_QUERY_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/turtle.hpp"

namespace ldaf::query {

using rdf::ParseError;

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, rdf::Term>;

struct QueryPattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

/// `FILTER regex(?variable, "pattern" [, "flags"])`. Only the `i` flag has an effect.
struct RegexFilter {
  std::string variable;
  std::string pattern;
  std::string flags;
  std::shared_ptr<const std::regex> compiled;

  bool case_insensitive() const { return flags.find('i') != std::string::npos; }
};

class RegexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::shared_ptr<const std::regex> compile_regex(const std::string& pattern, bool case_insensitive) {
  auto flags = std::regex::ECMAScript;
  if (case_insensitive) flags |= std::regex::icase;
  try {
    return std::make_shared<const std::regex>(pattern, flags);
  } catch (const std::regex_error& e) {
    throw RegexError("invalid regular expression '" + pattern + "': " + e.what());
  }
}

inline RegexFilter make_regex_filter(std::string variable, std::string pattern, std::string flags) {
  RegexFilter f{std::move(variable), std::move(pattern), std::move(flags), nullptr};
  f.compiled = compile_regex(f.pattern, f.case_insensitive());
  return f;
}

/// A parsed SELECT query over a basic graph pattern.
struct Query {
  rdf::PrefixMap prefixes;
  bool select_all = false;
  std::vector<std::string> projection;
  std::vector<QueryPattern> patterns;
  std::vector<RegexFilter> filters;
  std::optional<std::size_t> limit;
  std::optional<std::size_t> offset;

  /// Variables in order of first appearance in the patterns.
  std::vector<std::string> pattern_variables() const {
    std::vector<std::string> vars;
    auto note = [&](const PatternTerm& t) {
      if (auto v = std::get_if<Variable>(&t))
        if (std::find(vars.begin(), vars.end(), v->name) == vars.end()) vars.push_back(v->name);
    };
    for (const auto& p : patterns) {
      note(p.subject);
      note(p.predicate);
      note(p.object);
    }
    return vars;
  }

  /// The projected variable list with `*` expanded.
  std::vector<std::string> result_variables() const { return select_all ? pattern_variables() : projection; }
};

namespace detail {

class QueryParser {
 public:
  explicit QueryParser(std::string_view input) : in_(input) {}

  Query parse() {
    prologue();
    std::string form = peek_word();
    if (upper(form) != "SELECT") {
      if (is_unsupported_keyword(form)) unsupported(upper(form));
      fail(form.empty() ? "expected SELECT" : "expected SELECT, found '" + form + "'");
    }
    take_word();
    select_clause();
    skip_ws();
    if (upper(peek_word()) == "WHERE") take_word();
    skip_ws();
    if (upper(peek_word()) == "FROM") unsupported("FROM");
    expect('{');
    group();
    expect('}');
    modifiers();
    skip_ws();
    if (!at_end()) {
      std::string w = peek_word();
      if (is_unsupported_keyword(w)) unsupported(upper(w));
      fail("unexpected trailing input");
    }
    validate();
    return std::move(q_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw ParseError("unsupported SPARQL feature: " + what, line_, col_);
  }

  static std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }

  static bool is_unsupported_keyword(const std::string& word) {
    static const std::set<std::string> kUnsupported = {
        "OPTIONAL", "UNION",  "MINUS",  "GRAPH",   "SERVICE", "BIND",     "VALUES",  "ORDER",  "GROUP",
        "HAVING",   "CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE",   "LOAD",    "CLEAR",  "DROP",
        "CREATE",   "ADD",    "MOVE",   "COPY",    "WITH",    "DISTINCT", "REDUCED", "FROM",   "NAMED",
        "EXISTS",   "NOT"};
    return kUnsupported.contains(upper(word));
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

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  std::string peek_word() {
    skip_ws();
    std::size_t i = pos_;
    while (i < in_.size() && std::isalpha(static_cast<unsigned char>(in_[i]))) ++i;
    if (i < in_.size() && in_[i] == ':') return {};
    return std::string(in_.substr(pos_, i - pos_));
  }

  void take_word() {
    skip_ws();
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) get();
  }

  void prologue() {
    for (;;) {
      std::string w = upper(peek_word());
      if (w == "PREFIX") {
        take_word();
        skip_ws();
        std::string prefix;
        while (rdf::detail::is_name_char(peek()) || peek() == '.') prefix += get();
        if (peek() != ':') fail("expected prefix name followed by ':'");
        get();
        skip_ws();
        q_.prefixes[prefix] = iri_ref();
      } else if (w == "BASE") {
        take_word();
        skip_ws();
        base_ = iri_ref();
      } else {
        return;
      }
    }
  }

  void select_clause() {
    skip_ws();
    std::string w = peek_word();
    if (is_unsupported_keyword(w)) unsupported(upper(w));
    if (peek() == '*') {
      get();
      q_.select_all = true;
      return;
    }
    while (peek() == '?' || peek() == '$') {
      q_.projection.push_back(variable().name);
      skip_ws();
    }
    if (peek() == '(') unsupported("projection expression");
    if (q_.projection.empty()) fail("expected '*' or variables after SELECT");
  }

  void group() {
    for (;;) {
      skip_ws();
      if (at_end() || peek() == '}') return;
      if (peek() == '{') unsupported("nested group");
      std::string w = peek_word();
      if (upper(w) == "FILTER") {
        take_word();
        filter();
        skip_ws();
        if (peek() == '.') get();
        continue;
      }
      if (is_unsupported_keyword(w)) unsupported(upper(w));
      triples_block();
      skip_ws();
      if (peek() == '.') {
        get();
      } else if (peek() != '}') {
        std::string next = peek_word();
        if (is_unsupported_keyword(next)) unsupported(upper(next));
        if (upper(next) != "FILTER") fail("expected '.' or '}'");
      }
    }
  }

  void filter() {
    skip_ws();
    bool wrapped = false;
    if (peek() == '(') {
      get();
      wrapped = true;
    }
    std::string fn = peek_word();
    if (upper(fn) != "REGEX") unsupported(fn.empty() ? "FILTER expression" : "FILTER function " + fn);
    take_word();
    expect('(');
    skip_ws();
    if (peek() != '?' && peek() != '$') fail("regex expects a variable as first argument");
    std::string var = variable().name;
    expect(',');
    skip_ws();
    std::string pattern = string_literal();
    std::string flags;
    skip_ws();
    if (peek() == ',') {
      get();
      skip_ws();
      flags = string_literal();
    }
    expect(')');
    if (wrapped) expect(')');
    try {
      q_.filters.push_back(make_regex_filter(var, pattern, flags));
    } catch (const RegexError& e) {
      fail(e.what());
    }
  }

  void triples_block() {
    PatternTerm subject = term(Position::Subject);
    for (;;) {
      skip_ws();
      PatternTerm predicate = term(Position::Predicate);
      for (;;) {
        skip_ws();
        PatternTerm object = term(Position::Object);
        q_.patterns.push_back(QueryPattern{subject, predicate, object});
        skip_ws();
        if (peek() != ',') break;
        get();
      }
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      if (peek() == '.' || peek() == '}') return;
    }
  }

  enum class Position { Subject, Predicate, Object };

  Variable variable() {
    get();
    std::string name;
    while (rdf::detail::is_name_char(peek())) name += get();
    if (name.empty()) fail("empty variable name");
    return Variable{name};
  }

  PatternTerm term(Position pos) {
    skip_ws();
    char c = peek();
    if (at_end()) fail("unexpected end of query");
    if (c == '?' || c == '$') return variable();
    if (c == '[' || (c == '_' && peek(1) == ':')) unsupported("blank node");
    if (c == '(') unsupported("collection");
    if (c == '<') return rdf::Term(rdf::Iri(iri_ref()));
    if (pos == Position::Predicate && c == 'a' && !rdf::detail::is_name_char(peek(1)) && peek(1) != ':') {
      get();
      return rdf::Term(rdf::Iri(rdf::vocab::kRdfType));
    }
    if (c == '^' || c == '/' || c == '|' || c == '!') unsupported("property path");
    if (pos != Position::Object && (c == '"' || c == '\'' || rdf::detail::is_digit(c)))
      fail("literal not allowed here");
    if (c == '"' || c == '\'') return literal();
    if (rdf::detail::is_digit(c) || c == '+' || c == '-' || c == '.') return number();
    std::string w = peek_word();
    if (w == "true" || w == "false") {
      take_word();
      return rdf::Term(rdf::Literal(w, rdf::vocab::kXsdBoolean));
    }
    if (is_unsupported_keyword(w)) unsupported(upper(w));
    rdf::Term t{rdf::Iri(prefixed_name())};
    skip_ws();
    if (pos == Position::Predicate && (peek() == '/' || peek() == '|' || peek() == '*' || peek() == '+'))
      unsupported("property path");
    return t;
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected IRI");
    get();
    std::string text;
    while (!at_end() && peek() != '>') {
      char c = get();
      if (c == ' ' || c == '\n') fail("invalid character in IRI");
      text += c;
    }
    if (at_end()) fail("unterminated IRI");
    get();
    std::string resolved = base_.empty() ? text : rdf::resolve_iri(base_, text);
    if (!rdf::is_absolute_iri(resolved)) fail("IRI is not absolute: " + resolved);
    return resolved;
  }

  std::string prefixed_name() {
    std::string prefix;
    while (rdf::detail::is_name_char(peek()) || (peek() == '.' && rdf::detail::is_name_char(peek(1)))) prefix += get();
    if (peek() != ':') fail(prefix.empty() ? std::string("unexpected character '") + peek() + "'"
                                           : "unexpected token '" + prefix + "'");
    get();
    std::string local;
    while (rdf::detail::is_name_char(peek()) || peek() == ':' || peek() == '%' ||
           (peek() == '.' && rdf::detail::is_name_char(peek(1))))
      local += get();
    auto it = q_.prefixes.find(prefix);
    if (it == q_.prefixes.end()) fail("undefined prefix '" + prefix + ":'");
    return it->second + local;
  }

  std::string string_literal() {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected string");
    if (peek(1) == quote && peek(2) == quote) unsupported("multiline string literal");
    get();
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated string");
      char c = get();
      if (c == quote) break;
      if (c == '\n') fail("line break in string");
      if (c == '\\') {
        if (at_end()) fail("unterminated string");
        char e = get();
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("invalid escape '\\") + e + "'");
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  rdf::Term literal() {
    std::string lex = string_literal();
    if (peek() == '@') {
      get();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') lang += get();
      if (lang.empty()) fail("empty language tag");
      return rdf::Term(rdf::Literal::tagged(lex, lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      std::string dt = peek() == '<' ? iri_ref() : prefixed_name();
      return rdf::Term(rdf::Literal(lex, dt));
    }
    return rdf::Term(rdf::Literal(lex));
  }

  rdf::Term number() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += get();
    while (rdf::detail::is_digit(peek())) lex += get();
    bool decimal = false;
    if (peek() == '.' && rdf::detail::is_digit(peek(1))) {
      decimal = true;
      lex += get();
      while (rdf::detail::is_digit(peek())) lex += get();
    }
    if (peek() == 'e' || peek() == 'E') unsupported("double literal");
    if (lex.empty() || lex == "+" || lex == "-") fail("malformed number");
    return rdf::Term(rdf::Literal(lex, decimal ? rdf::vocab::kXsdDecimal : rdf::vocab::kXsdInteger));
  }

  std::size_t integer() {
    skip_ws();
    std::string digits;
    while (rdf::detail::is_digit(peek())) digits += get();
    if (digits.empty() || digits.size() > 18) fail("expected a non-negative integer");
    return static_cast<std::size_t>(std::stoull(digits));
  }

  void modifiers() {
    for (;;) {
      std::string w = upper(peek_word());
      if (w == "LIMIT") {
        take_word();
        if (q_.limit) fail("duplicate LIMIT");
        q_.limit = integer();
      } else if (w == "OFFSET") {
        take_word();
        if (q_.offset) fail("duplicate OFFSET");
        q_.offset = integer();
      } else {
        return;
      }
    }
  }

  void validate() {
    auto vars = q_.pattern_variables();
    auto known = [&](const std::string& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
    for (const auto& v : q_.projection)
      if (!known(v)) throw ParseError("projected variable ?" + v + " does not occur in the WHERE clause", line_, col_);
    for (const auto& f : q_.filters)
      if (!known(f.variable))
        throw ParseError("filtered variable ?" + f.variable + " does not occur in the WHERE clause", line_, col_);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::string base_;
  Query q_;
};

}  // namespace detail

/// Parses the supported SELECT subset: PREFIX/BASE, SELECT * or variables,
/// a basic graph pattern with `FILTER regex(...)`, LIMIT and OFFSET.
inline Query parse_query(std::string_view input) { return detail::QueryParser(input).parse(); }

}  // namespace ldaf::query

#endif  // LDAF_QUERY_QUERY_HPP
