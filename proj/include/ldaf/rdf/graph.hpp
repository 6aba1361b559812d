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

#ifndef LDAF_RDF_GRAPH_HPP
#define LDAF_RDF_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldaf/rdf/term.hpp"

namespace ldaf::rdf {

using PrefixMap = std::map<std::string, std::string>;

/// Pattern for Graph::match. Unset positions are wildcards.
struct TriplePattern {
  std::optional<Iri> subject;
  std::optional<Iri> predicate;
  std::optional<Term> object;

  bool matches(const Triple& t) const {
    return (!subject || *subject == t.subject) && (!predicate || *predicate == t.predicate) &&
           (!object || *object == t.object);
  }
};

/// A named set of triples, iterated in (subject, predicate, object) order.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() = default;
  explicit Graph(Iri name) : name_(std::move(name)) {}

  const Iri& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }
  const_iterator begin() const { return spo_.begin(); }
  const_iterator end() const { return spo_.end(); }
  const std::set<Triple>& triples() const noexcept { return spo_; }

  /// Returns false when the triple was already present.
  bool insert(const Triple& t) {
    if (!spo_.insert(t).second) return false;
    ops_.insert(t);
    return true;
  }

  template <typename Range>
  std::size_t insert_all(const Range& triples) {
    std::size_t added = 0;
    for (const Triple& t : triples) added += insert(t) ? 1 : 0;
    return added;
  }

  bool contains(const Triple& t) const { return spo_.contains(t); }

  /// Removes every triple matching `pattern`; returns how many were removed.
  std::size_t remove(const TriplePattern& pattern) {
    std::vector<Triple> doomed = match(pattern);
    for (const Triple& t : doomed) {
      spo_.erase(t);
      ops_.erase(t);
    }
    return doomed.size();
  }

  std::size_t remove(const Triple& t) {
    if (spo_.erase(t) == 0) return 0;
    ops_.erase(t);
    return 1;
  }

  /// Matching triples in graph order.
  std::vector<Triple> match(const TriplePattern& pattern) const {
    std::vector<Triple> out;
    if (pattern.subject) {
      auto it = spo_.lower_bound(Triple{*pattern.subject, Iri(), Term()});
      for (; it != spo_.end() && it->subject == *pattern.subject; ++it)
        if (pattern.matches(*it)) out.push_back(*it);
    } else if (pattern.object) {
      auto it = ops_.lower_bound(Triple{Iri(), Iri(), *pattern.object});
      for (; it != ops_.end() && it->object == *pattern.object; ++it)
        if (pattern.matches(*it)) out.push_back(*it);
      std::sort(out.begin(), out.end());
    } else {
      for (const Triple& t : spo_)
        if (pattern.matches(t)) out.push_back(t);
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.name_ == b.name_ && a.spo_ == b.spo_;
  }

 private:
  struct ObjectFirst {
    bool operator()(const Triple& a, const Triple& b) const {
      if (auto c = a.object <=> b.object; c != 0) return c < 0;
      if (auto c = a.subject <=> b.subject; c != 0) return c < 0;
      return a.predicate < b.predicate;
    }
  };

  Iri name_;
  std::set<Triple> spo_;
  std::set<Triple, ObjectFirst> ops_;
};

/// Matches over the set union of several graphs: sorted, duplicates removed.
inline std::vector<Triple> match_union(std::span<const Graph* const> graphs, const TriplePattern& pattern) {
  if (graphs.size() == 1) return graphs[0]->match(pattern);
  std::vector<Triple> out;
  for (const Graph* g : graphs) {
    auto part = g->match(pattern);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Named graphs plus the prefix table used for serialization.
class Dataset {
 public:
  Dataset() { add_standard_prefixes(prefixes_); }

  static void add_standard_prefixes(PrefixMap& p) {
    p.emplace("rdf", std::string(vocab::kRdf));
    p.emplace("rdfs", std::string(vocab::kRdfs));
    p.emplace("xsd", std::string(vocab::kXsd));
  }

  const PrefixMap& prefixes() const noexcept { return prefixes_; }
  void set_prefix(std::string prefix, std::string ns) { prefixes_[std::move(prefix)] = std::move(ns); }
  void set_prefixes(PrefixMap p) {
    prefixes_ = std::move(p);
    add_standard_prefixes(prefixes_);
  }

  bool has_graph(const Iri& name) const { return graphs_.contains(name); }

  /// Returns the graph, creating an empty one when absent.
  Graph& ensure_graph(const Iri& name) {
    auto it = graphs_.find(name);
    if (it == graphs_.end()) it = graphs_.emplace(name, Graph(name)).first;
    return it->second;
  }

  Graph& graph(const Iri& name) {
    auto it = graphs_.find(name);
    if (it == graphs_.end()) throw std::out_of_range("unknown graph: " + name.str());
    return it->second;
  }
  const Graph& graph(const Iri& name) const {
    auto it = graphs_.find(name);
    if (it == graphs_.end()) throw std::out_of_range("unknown graph: " + name.str());
    return it->second;
  }

  bool remove_graph(const Iri& name) { return graphs_.erase(name) > 0; }

  const std::map<Iri, Graph>& graphs() const noexcept { return graphs_; }

  bool insert(const Iri& graph_name, const Triple& t) { return graph(graph_name).insert(t); }
  std::size_t remove(const Iri& graph_name, const TriplePattern& p) { return graph(graph_name).remove(p); }
  std::vector<Triple> match(const Iri& graph_name, const TriplePattern& p) const {
    return graph(graph_name).match(p);
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::map<Iri, Graph> graphs_;
  PrefixMap prefixes_;
};

}  // namespace ldaf::rdf

#endif  // LDAF_RDF_GRAPH_HPP
