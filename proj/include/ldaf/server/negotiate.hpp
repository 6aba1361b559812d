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

#ifndef LDAF_SERVER_NEGOTIATE_HPP
#define LDAF_SERVER_NEGOTIATE_HPP

#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ldaf::server {

enum class Format { kHtml, kTurtle, kJson };

inline constexpr std::array<Format, 3> kFormatPreference = {Format::kHtml, Format::kTurtle, Format::kJson};

inline std::string_view media_type(Format f) {
  switch (f) {
    case Format::kHtml: return "text/html";
    case Format::kTurtle: return "text/turtle";
    case Format::kJson: return "application/json";
  }
  return "";
}

/// Exact Content-Type header value sent for each format.
inline std::string_view content_type(Format f) {
  switch (f) {
    case Format::kHtml: return "text/html; charset=utf-8";
    case Format::kTurtle: return "text/turtle; charset=utf-8";
    case Format::kJson: return "application/json";
  }
  return "";
}

struct MediaRange {
  std::string type;
  std::string subtype;
  double q = 1.0;

  /// 2 for type/subtype, 1 for type/*, 0 for */*.
  int specificity() const { return type == "*" ? 0 : subtype == "*" ? 1 : 2; }

  bool matches(std::string_view media) const {
    auto slash = media.find('/');
    std::string_view t = media.substr(0, slash), s = media.substr(slash + 1);
    return (type == "*" || type == t) && (subtype == "*" || subtype == s);
  }
};

namespace detail {

inline std::string lower_trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline bool is_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c <= ' ' || c >= 127 || std::string_view("()<>@,;:\\\"/[]?={}").find(c) != std::string_view::npos)
      return false;
  return true;
}

inline std::optional<double> parse_q(std::string_view v) {
  if (v.empty() || v.size() > 5) return std::nullopt;
  if (v[0] != '0' && v[0] != '1') return std::nullopt;
  if (v.size() > 1) {
    if (v[1] != '.') return std::nullopt;
    for (std::size_t i = 2; i < v.size(); ++i)
      if (v[i] < '0' || v[i] > '9') return std::nullopt;
  }
  double q = std::strtod(std::string(v).c_str(), nullptr);
  if (q > 1.0) return std::nullopt;
  return q;
}

}  // namespace detail

/// Media ranges of an Accept header; nullopt when any part is malformed.
inline std::optional<std::vector<MediaRange>> parse_accept(std::string_view header) {
  std::vector<MediaRange> out;
  std::size_t start = 0;
  while (start <= header.size()) {
    std::size_t comma = header.find(',', start);
    std::string_view part = header.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    start = comma == std::string_view::npos ? header.size() + 1 : comma + 1;
    if (detail::lower_trim(part).empty()) continue;
    std::vector<std::string> fields;
    std::size_t p = 0;
    while (p <= part.size()) {
      std::size_t semi = part.find(';', p);
      fields.push_back(detail::lower_trim(part.substr(p, semi == std::string_view::npos ? std::string_view::npos : semi - p)));
      p = semi == std::string_view::npos ? part.size() + 1 : semi + 1;
    }
    MediaRange range;
    auto slash = fields[0].find('/');
    if (slash == std::string::npos) return std::nullopt;
    range.type = fields[0].substr(0, slash);
    range.subtype = fields[0].substr(slash + 1);
    if (!detail::is_token(range.type) || !detail::is_token(range.subtype)) return std::nullopt;
    if (range.type == "*" && range.subtype != "*") return std::nullopt;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto eq = fields[i].find('=');
      if (eq == std::string::npos) return std::nullopt;
      std::string name = detail::lower_trim(std::string_view(fields[i]).substr(0, eq));
      std::string value = detail::lower_trim(std::string_view(fields[i]).substr(eq + 1));
      if (name == "q") {
        auto q = detail::parse_q(value);
        if (!q) return std::nullopt;
        range.q = *q;
      }
    }
    out.push_back(std::move(range));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

/// q-value and specificity the header assigns to `media`; the most specific matching range decides.
inline std::optional<MediaRange> best_range_for(const std::vector<MediaRange>& ranges, std::string_view media) {
  std::optional<MediaRange> best;
  for (const auto& r : ranges) {
    if (!r.matches(media)) continue;
    if (!best || r.specificity() > best->specificity() ||
        (r.specificity() == best->specificity() && r.q > best->q))
      best = r;
  }
  return best;
}

/// Picks the response format for an Accept header; nullopt means 406.
/// Absent, empty or malformed headers select html.
inline std::optional<Format> negotiate(const std::optional<std::string>& accept) {
  if (!accept) return Format::kHtml;
  auto ranges = parse_accept(*accept);
  if (!ranges) return Format::kHtml;
  std::optional<Format> chosen;
  double chosen_q = 0;
  int chosen_spec = -1;
  for (Format f : kFormatPreference) {
    auto r = best_range_for(*ranges, media_type(f));
    if (!r || r->q <= 0) continue;
    if (!chosen || r->q > chosen_q || (r->q == chosen_q && r->specificity() > chosen_spec)) {
      chosen = f;
      chosen_q = r->q;
      chosen_spec = r->specificity();
    }
  }
  return chosen;
}

}  // namespace ldaf::server

#endif  // LDAF_SERVER_NEGOTIATE_HPP
