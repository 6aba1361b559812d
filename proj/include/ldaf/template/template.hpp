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

#ifndef LDAF_TEMPLATE_TEMPLATE_HPP
#define LDAF_TEMPLATE_TEMPLATE_HPP

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldaf/rdf/turtle.hpp"

namespace ldaf::tpl {

using Json = nlohmann::json;

/// Unclosed block, unknown directive or malformed path, with the tag's location.
using TemplateError = rdf::ParseError;

/// Dot-separated lookup path such as `item.labels.0`.
struct Path {
  std::vector<std::string> segments;

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (i) out += '.';
      out += segments[i];
    }
    return out;
  }
  friend bool operator==(const Path&, const Path&) = default;
};

struct Node;
using Nodes = std::vector<Node>;

struct TextNode {
  std::string text;
  friend bool operator==(const TextNode&, const TextNode&) = default;
};

struct InterpNode {
  Path path;
  bool raw = false;
  friend bool operator==(const InterpNode&, const InterpNode&) = default;
};

struct ForNode {
  std::string variable;
  Path path;
  Nodes body;
  friend bool operator==(const ForNode&, const ForNode&) = default;
};

struct IfNode {
  Path path;
  Nodes then_body;
  Nodes else_body;
  bool has_else = false;
  friend bool operator==(const IfNode&, const IfNode&) = default;
};

struct Node {
  std::variant<TextNode, InterpNode, ForNode, IfNode> data;
  friend bool operator==(const Node&, const Node&) = default;
};

struct Template {
  std::string name;
  Nodes nodes;
  friend bool operator==(const Template&, const Template&) = default;
};

/// Replaces `& < > " '` with HTML entities.
inline void append_escaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
}

inline std::string html_escape(std::string_view text) {
  std::string out;
  append_escaped(out, text);
  return out;
}

namespace detail {

inline bool is_path_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
         c == ':' || u >= 0x80;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\n' || s[j] == '\r')) ++j;
    if (j > i) words.push_back(s.substr(i, j - i));
    i = j;
  }
  return words;
}

class TemplateParser {
 public:
  TemplateParser(std::string_view source) : src_(source) {}

  Nodes parse() {
    Nodes root;
    parse_into(root, nullptr);
    return root;
  }

 private:
  struct Location {
    std::size_t line, column;
  };

  Location location_of(std::size_t offset) const {
    Location loc{1, 1};
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
    return loc;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    auto loc = location_of(offset);
    throw TemplateError(msg, loc.line, loc.column);
  }

  Path parse_path(std::string_view text, std::size_t offset) const {
    text = trim(text);
    if (text.empty()) fail("empty path expression", offset);
    Path path;
    std::size_t i = 0;
    for (;;) {
      std::size_t j = i;
      while (j < text.size() && is_path_char(text[j])) ++j;
      if (j == i) fail("malformed path '" + std::string(text) + "'", offset);
      path.segments.emplace_back(text.substr(i, j - i));
      if (j == text.size()) break;
      if (text[j] != '.') fail("malformed path '" + std::string(text) + "'", offset);
      i = j + 1;
      if (i == text.size()) fail("malformed path '" + std::string(text) + "'", offset);
    }
    return path;
  }

  enum class Stop { End, EndFor, Else, EndIf };

  /// Parses nodes until a closing directive; `opener` is the offset of the open tag, if any.
  Stop parse_into(Nodes& out, const std::size_t* opener) {
    std::string text;
    auto flush = [&] {
      if (!text.empty()) out.push_back(Node{TextNode{std::move(text)}});
      text.clear();
    };
    while (pos_ < src_.size()) {
      std::size_t open = src_.find('{', pos_);
      if (open == std::string_view::npos || open + 1 >= src_.size()) {
        text.append(src_.substr(pos_));
        pos_ = src_.size();
        break;
      }
      char next = src_[open + 1];
      if (next != '{' && next != '%') {
        text.append(src_.substr(pos_, open + 1 - pos_));
        pos_ = open + 1;
        continue;
      }
      text.append(src_.substr(pos_, open - pos_));
      if (next == '{') {
        flush();
        bool raw = open + 2 < src_.size() && src_[open + 2] == '{';
        std::string_view closer = raw ? "}}}" : "}}";
        std::size_t start = open + (raw ? 3 : 2);
        std::size_t close = src_.find(closer, start);
        if (close == std::string_view::npos) fail(raw ? "unclosed '{{{'" : "unclosed '{{'", open);
        out.push_back(Node{InterpNode{parse_path(src_.substr(start, close - start), open), raw}});
        pos_ = close + closer.size();
        continue;
      }
      std::size_t close = src_.find("%}", open + 2);
      if (close == std::string_view::npos) fail("unclosed '{%'", open);
      auto words = split_words(src_.substr(open + 2, close - open - 2));
      pos_ = close + 2;
      if (words.empty()) fail("empty directive", open);
      if (words[0] == "for") {
        if (words.size() != 4 || words[2] != "in") fail("expected '{% for name in path %}'", open);
        Path var = parse_path(words[1], open);
        if (var.segments.size() != 1) fail("loop variable must be a single name", open);
        flush();
        ForNode node{var.segments[0], parse_path(words[3], open), {}};
        if (parse_into(node.body, &open) != Stop::EndFor) fail("expected '{% endfor %}'", open);
        out.push_back(Node{std::move(node)});
      } else if (words[0] == "if") {
        if (words.size() != 2) fail("expected '{% if path %}'", open);
        flush();
        IfNode node{parse_path(words[1], open), {}, {}, false};
        Stop stop = parse_into(node.then_body, &open);
        if (stop == Stop::Else) {
          node.has_else = true;
          stop = parse_into(node.else_body, &open);
        }
        if (stop != Stop::EndIf) fail("expected '{% endif %}'", open);
        out.push_back(Node{std::move(node)});
      } else if (words.size() == 1 && (words[0] == "endfor" || words[0] == "else" || words[0] == "endif")) {
        if (!opener) fail("unexpected '{% " + std::string(words[0]) + " %}'", open);
        flush();
        if (words[0] == "endfor") return Stop::EndFor;
        if (words[0] == "else") return Stop::Else;
        return Stop::EndIf;
      } else {
        fail("unknown directive '" + std::string(words[0]) + "'", open);
      }
    }
    flush();
    if (opener) fail("unclosed block", *opener);
    return Stop::End;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

struct Scope {
  const std::string* name;
  const Json* value;
};

class Renderer {
 public:
  explicit Renderer(const Json& model) : model_(model) {}

  void render(const Nodes& nodes, std::string& out) {
    for (const Node& node : nodes) std::visit([&](const auto& n) { render_node(n, out); }, node.data);
  }

 private:
  const Json* lookup(const Path& path) const {
    const Json* cur = nullptr;
    const std::string& head = path.segments.front();
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (*it->name == head) {
        cur = it->value;
        break;
      }
    }
    if (!cur) {
      if (!model_.is_object()) return nullptr;
      auto it = model_.find(head);
      if (it == model_.end()) return nullptr;
      cur = &*it;
    }
    for (std::size_t i = 1; i < path.segments.size(); ++i) {
      const std::string& seg = path.segments[i];
      if (cur->is_object()) {
        auto it = cur->find(seg);
        if (it == cur->end()) return nullptr;
        cur = &*it;
      } else if (cur->is_array()) {
        if (seg.empty() || seg.size() > 9 || seg.find_first_not_of("0123456789") != std::string::npos) return nullptr;
        std::size_t index = std::stoul(seg);
        if (index >= cur->size()) return nullptr;
        cur = &(*cur)[index];
      } else {
        return nullptr;
      }
    }
    return cur;
  }

  static bool truthy(const Json* v) {
    if (!v || v->is_null()) return false;
    if (v->is_boolean()) return v->get<bool>();
    if (v->is_string()) return !v->get_ref<const std::string&>().empty();
    if (v->is_array() || v->is_object()) return !v->empty();
    return true;
  }

  void render_node(const TextNode& n, std::string& out) { out += n.text; }

  void render_node(const InterpNode& n, std::string& out) {
    const Json* v = lookup(n.path);
    if (!v || v->is_null()) return;
    std::string text = v->is_string() ? v->get<std::string>()
                                      : v->dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
    if (n.raw) out += text;
    else append_escaped(out, text);
  }

  void render_node(const ForNode& n, std::string& out) {
    const Json* v = lookup(n.path);
    if (!truthy(v)) return;
    auto run = [&](const Json& item) {
      scopes_.push_back(Scope{&n.variable, &item});
      render(n.body, out);
      scopes_.pop_back();
    };
    if (v->is_array()) {
      for (const Json& item : *v) run(item);
    } else {
      run(*v);
    }
  }

  void render_node(const IfNode& n, std::string& out) {
    render(truthy(lookup(n.path)) ? n.then_body : n.else_body, out);
  }

  const Json& model_;
  std::vector<Scope> scopes_;
};

inline void append_source(const Nodes& nodes, std::string& out) {
  for (const Node& node : nodes) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TextNode>) {
            out += n.text;
          } else if constexpr (std::is_same_v<T, InterpNode>) {
            out += n.raw ? "{{{ " + n.path.str() + " }}}" : "{{ " + n.path.str() + " }}";
          } else if constexpr (std::is_same_v<T, ForNode>) {
            out += "{% for " + n.variable + " in " + n.path.str() + " %}";
            append_source(n.body, out);
            out += "{% endfor %}";
          } else {
            out += "{% if " + n.path.str() + " %}";
            append_source(n.then_body, out);
            if (n.has_else) {
              out += "{% else %}";
              append_source(n.else_body, out);
            }
            out += "{% endif %}";
          }
        },
        node.data);
  }
}

}  // namespace detail

inline Template parse_template(std::string_view source, std::string name) {
  return Template{std::move(name), detail::TemplateParser(source).parse()};
}

/// Renders against a JSON model. Missing paths render empty / iterate zero times / take the else branch.
inline std::string render(const Template& tpl, const Json& model) {
  std::string out;
  detail::Renderer(model).render(tpl.nodes, out);
  return out;
}

/// Source text that parses back to the same nodes.
inline std::string to_source(const Template& tpl) {
  std::string out;
  detail::append_source(tpl.nodes, out);
  return out;
}

}  // namespace ldaf::tpl

#endif  // LDAF_TEMPLATE_TEMPLATE_HPP
