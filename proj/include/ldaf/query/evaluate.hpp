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

#ifndef LDAF_QUERY_EVALUATE_HPP
#define LDAF_QUERY_EVALUATE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldaf/query/query.hpp"
#include "ldaf/rdf/graph.hpp"

namespace ldaf::query {

using Graphs = std::span<const rdf::Graph* const>;

struct Solution {
  std::map<std::string, rdf::Term> bindings;

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution& a, const Solution& b) { return a.bindings <=> b.bindings; }
};

namespace detail {

class BgpEvaluator {
 public:
  BgpEvaluator(const Query& q, Graphs graphs) : q_(q), graphs_(graphs) {}

  std::vector<Solution> run() {
    Solution current;
    join(0, current);
    return std::move(out_);
  }

 private:
  /// The bound term for `t`, or nullopt when `t` is a free variable.
  std::optional<rdf::Term> resolve(const PatternTerm& t, const Solution& s) const {
    if (auto v = std::get_if<Variable>(&t)) {
      auto it = s.bindings.find(v->name);
      if (it == s.bindings.end()) return std::nullopt;
      return it->second;
    }
    return std::get<rdf::Term>(t);
  }

  static bool bind(Solution& s, const PatternTerm& t, const rdf::Term& value) {
    auto v = std::get_if<Variable>(&t);
    if (!v) return true;
    auto [it, inserted] = s.bindings.emplace(v->name, value);
    return inserted || it->second == value;
  }

  void join(std::size_t i, Solution& current) {
    if (i == q_.patterns.size()) {
      if (passes_filters(current)) out_.push_back(current);
      return;
    }
    const QueryPattern& p = q_.patterns[i];
    rdf::TriplePattern tp;
    if (auto s = resolve(p.subject, current)) {
      if (!s->is_iri()) return;
      tp.subject = s->as_iri();
    }
    if (auto pr = resolve(p.predicate, current)) {
      if (!pr->is_iri()) return;
      tp.predicate = pr->as_iri();
    }
    tp.object = resolve(p.object, current);
    for (const rdf::Triple& t : rdf::match_union(graphs_, tp)) {
      Solution next = current;
      if (bind(next, p.subject, rdf::Term(t.subject)) && bind(next, p.predicate, rdf::Term(t.predicate)) &&
          bind(next, p.object, t.object))
        join(i + 1, next);
    }
  }

  bool passes_filters(const Solution& s) const {
    for (const RegexFilter& f : q_.filters) {
      auto it = s.bindings.find(f.variable);
      if (it == s.bindings.end()) return false;
      if (!std::regex_search(it->second.text(), *f.compiled)) return false;
    }
    return true;
  }

  const Query& q_;
  Graphs graphs_;
  std::vector<Solution> out_;
};

}  // namespace detail

/// Nested-loop join of the patterns in query order over the union of `graphs`.
/// Bag semantics; filters run on complete rows; then OFFSET, LIMIT, projection.
inline std::vector<Solution> evaluate(const Query& query, Graphs graphs) {
  std::vector<Solution> rows = detail::BgpEvaluator(query, graphs).run();
  std::size_t offset = std::min(query.offset.value_or(0), rows.size());
  std::size_t count = rows.size() - offset;
  if (query.limit) count = std::min(count, *query.limit);
  std::vector<Solution> page(std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(offset)),
                             std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(offset + count)));
  if (!query.select_all) {
    for (Solution& s : page) {
      Solution projected;
      for (const auto& v : query.projection)
        if (auto it = s.bindings.find(v); it != s.bindings.end()) projected.bindings.emplace(v, it->second);
      s = std::move(projected);
    }
  }
  return page;
}

struct LabelHit {
  rdf::Iri resource;
  std::string label;

  friend bool operator==(const LabelHit&, const LabelHit&) = default;
};

/// Resources whose rdfs:label matches `pattern` case-insensitively, by label then IRI.
/// Throws RegexError for an invalid pattern.
inline std::vector<LabelHit> search_labels(const std::string& pattern, Graphs graphs,
                                           std::optional<std::size_t> limit = std::nullopt) {
  Query q;
  q.projection = {"s", "l"};
  q.patterns.push_back(QueryPattern{Variable{"s"}, rdf::Term(rdf::Iri(rdf::vocab::kRdfsLabel)), Variable{"l"}});
  q.filters.push_back(make_regex_filter("l", pattern, "i"));
  std::vector<LabelHit> hits;
  for (const Solution& s : evaluate(q, graphs)) {
    const rdf::Term& subject = s.bindings.at("s");
    hits.push_back(LabelHit{subject.as_iri(), s.bindings.at("l").text()});
  }
  std::sort(hits.begin(), hits.end(), [](const LabelHit& a, const LabelHit& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.resource < b.resource;
  });
  if (limit && hits.size() > *limit) hits.resize(*limit);
  return hits;
}

/// SPARQL 1.1 JSON results for `rows`.
inline nlohmann::ordered_json results_to_json(const std::vector<std::string>& vars, const std::vector<Solution>& rows) {
  nlohmann::ordered_json out;
  out["head"]["vars"] = vars;
  auto bindings = nlohmann::ordered_json::array();
  for (const Solution& s : rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (const auto& v : vars) {
      auto it = s.bindings.find(v);
      if (it == s.bindings.end()) continue;
      nlohmann::ordered_json cell;
      const rdf::Term& t = it->second;
      if (t.is_iri()) {
        cell["type"] = "uri";
        cell["value"] = t.as_iri().str();
      } else {
        const rdf::Literal& lit = t.as_literal();
        cell["type"] = "literal";
        cell["value"] = lit.lexical();
        if (lit.has_lang()) cell["xml:lang"] = lit.lang();
        else if (lit.datatype() != rdf::vocab::kXsdString) cell["datatype"] = lit.datatype();
      }
      row[v] = std::move(cell);
    }
    bindings.push_back(std::move(row));
  }
  out["results"]["bindings"] = std::move(bindings);
  return out;
}

}  // namespace ldaf::query

#endif  // LDAF_QUERY_EVALUATE_HPP
