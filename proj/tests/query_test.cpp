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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ldaf/query/evaluate.hpp"
#include "ldaf/query/query.hpp"
#include "ldaf/rdf/turtle.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/query_cases.hpp"

namespace ldaf::query {
namespace {

using rdf::Graph;
using rdf::Term;

Graph graph_of(const std::string& turtle) {
  Graph g(rdf::Iri("http://ex.org/g"));
  g.insert_all(rdf::parse_turtle(turtle, "http://ex.org/"));
  return g;
}

std::string parse_error_of(const std::string& text) {
  try {
    parse_query(text);
  } catch (const ParseError& e) {
    return e.message();
  }
  return "<parsed>";
}

TEST(ParseQuery, SelectStar) {
  Query q = parse_query("SELECT * WHERE { ?s ?p ?o }");
  EXPECT_TRUE(q.select_all);
  ASSERT_EQ(q.patterns.size(), 1u);
  EXPECT_EQ(q.result_variables(), (std::vector<std::string>{"s", "p", "o"}));
}

TEST(ParseQuery, TypeShorthandAndLimit) {
  Query q = parse_query("SELECT ?s WHERE { ?s a <http://ex.org/C> } LIMIT 5");
  ASSERT_EQ(q.patterns.size(), 1u);
  EXPECT_EQ(std::get<Term>(q.patterns[0].predicate), Term::iri(rdf::vocab::kRdfType));
  EXPECT_EQ(std::get<Term>(q.patterns[0].object), Term::iri("http://ex.org/C"));
  EXPECT_EQ(q.limit, 5u);
  EXPECT_FALSE(q.offset);
}

TEST(ParseQuery, PrefixesFiltersAndLists) {
  Query q = parse_query(
      "PREFIX ex: <http://ex.org/>\n"
      "select ?s ?n where {\n  ?s ex:name ?n ; ex:age 36 , \"x\"@en .\n  FILTER regex(?n, \"^Al\", \"i\")\n}"
      " OFFSET 2 LIMIT 3");
  EXPECT_EQ(q.patterns.size(), 3u);
  ASSERT_EQ(q.filters.size(), 1u);
  EXPECT_EQ(q.filters[0].variable, "n");
  EXPECT_TRUE(q.filters[0].case_insensitive());
  EXPECT_EQ(q.offset, 2u);
  EXPECT_EQ(q.limit, 3u);
}

TEST(ParseQuery, UnsupportedFeatures) {
  for (const char* text :
       {"SELECT ?x WHERE { ?x ?p ?y } ORDER BY ?x", "CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }",
        "SELECT * WHERE { ?s ?p ?o OPTIONAL { ?s ?q ?r } }", "SELECT * WHERE { { ?s ?p ?o } UNION { ?s ?q ?o } }",
        "ASK { ?s ?p ?o }", "SELECT DISTINCT ?s WHERE { ?s ?p ?o }", "INSERT DATA { <http://a/b> <http://a/c> 1 }",
        "SELECT * WHERE { ?s ?p _:b }", "SELECT * WHERE { ?s ?p ?o FILTER(?o > 3) }",
        "SELECT * WHERE { GRAPH <http://g/> { ?s ?p ?o } }"}) {
    EXPECT_NE(parse_error_of(text).find("unsupported SPARQL feature"), std::string::npos) << text;
  }
}

TEST(ParseQuery, SyntaxErrors) {
  EXPECT_EQ(parse_error_of("SELECT ?s WHERE { ?x ?p ?o }").find("unsupported"), std::string::npos);
  EXPECT_NE(parse_error_of("SELECT ?s WHERE { ?x ?p ?o }"), "<parsed>");
  EXPECT_NE(parse_error_of("SELECT * WHERE { ?s ?p }"), "<parsed>");
  EXPECT_NE(parse_error_of("SELECT * WHERE { ?s ex:p ?o }"), "<parsed>");
  EXPECT_NE(parse_error_of("SELECT * WHERE { ?s ?p ?o } LIMIT x"), "<parsed>");
  EXPECT_NE(parse_error_of("SELECT * WHERE { ?s ?p ?o FILTER regex(?o, \"(\") }"), "<parsed>");
  try {
    parse_query("SELECT *\nWHERE { ?s ?p ?o\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Evaluate, AllTriplesAndEmptyGraph) {
  Graph g = graph_of("<http://ex.org/a> <http://ex.org/p> 1, 2, 3 .");
  const Graph* gs[] = {&g};
  EXPECT_EQ(evaluate(parse_query("SELECT * WHERE { ?s ?p ?o }"), gs).size(), 3u);
  Graph empty;
  const Graph* es[] = {&empty};
  EXPECT_TRUE(evaluate(parse_query("SELECT * WHERE { ?s ?p ?o }"), es).empty());
}

TEST(Evaluate, RepeatedVariableMustAgree) {
  Graph g = graph_of("<http://ex.org/a> <http://ex.org/p> <http://ex.org/a> .\n"
                     "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .");
  const Graph* gs[] = {&g};
  auto rows = evaluate(parse_query("SELECT ?x WHERE { ?x <http://ex.org/p> ?x }"), gs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].bindings.at("x"), Term::iri("http://ex.org/a"));
}

TEST(Evaluate, UnionOfGraphsIsASet) {
  Graph a = graph_of("<http://ex.org/a> <http://ex.org/p> 1 .");
  Graph b = graph_of("<http://ex.org/a> <http://ex.org/p> 1 . <http://ex.org/b> <http://ex.org/p> 2 .");
  const Graph* gs[] = {&a, &b};
  EXPECT_EQ(evaluate(parse_query("SELECT * WHERE { ?s ?p ?o }"), gs).size(), 2u);
}

std::vector<std::map<std::string, Term>> rows_of(const std::vector<Solution>& solutions) {
  std::vector<std::map<std::string, Term>> rows;
  for (const auto& s : solutions) rows.push_back(s.bindings);
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST(Evaluate, MatchesExhaustiveOracle) {
  std::mt19937 rng(23);
  for (int round = 0; round < 300; ++round) {
    testing::RandomQueryCase c = testing::random_query_case(rng);
    const Graph* gs[] = {&c.graph};
    auto ours = rows_of(evaluate(parse_query(c.text), gs));
    auto expected = testing::oracle_select(c.patterns, c.filters, c.projection, {&c.graph});
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(ours, expected) << c.text;
  }
}

TEST(Evaluate, InvariantUnderPatternReordering) {
  std::mt19937 rng(29);
  for (int round = 0; round < 200; ++round) {
    testing::RandomQueryCase c = testing::random_query_case(rng);
    const Graph* gs[] = {&c.graph};
    Query q = parse_query(c.text);
    auto baseline = rows_of(evaluate(q, gs));
    std::reverse(q.patterns.begin(), q.patterns.end());
    ASSERT_EQ(rows_of(evaluate(q, gs)), baseline) << c.text;
  }
}

TEST(Evaluate, OffsetAndLimitSliceTheFullResult) {
  std::mt19937 rng(31);
  for (int round = 0; round < 200; ++round) {
    testing::RandomQueryCase c = testing::random_query_case(rng);
    const Graph* gs[] = {&c.graph};
    Query q = parse_query(c.text);
    auto full = evaluate(q, gs);
    std::size_t k = static_cast<std::size_t>(testing::uniform(rng, 0, 6));
    std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 0, 6));
    q.offset = k;
    q.limit = m;
    auto page = evaluate(q, gs);
    std::vector<Solution> expected;
    for (std::size_t i = k; i < full.size() && i < k + m; ++i) expected.push_back(full[i]);
    ASSERT_EQ(page, expected) << c.text;
  }
}

TEST(SearchLabels, Examples) {
  Graph g = graph_of(
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "<http://ex.org/a> rdfs:label \"Alice\" . <http://ex.org/b> rdfs:label \"Bob\" .");
  const Graph* gs[] = {&g};
  auto all = search_labels(".*", gs);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].label, "Alice");
  EXPECT_EQ(all[1].resource.str(), "http://ex.org/b");
  EXPECT_TRUE(search_labels("zzz", gs).empty());
  EXPECT_EQ(search_labels("^al", gs).size(), 1u);
  EXPECT_EQ(search_labels(".*", gs, 1).size(), 1u);
  EXPECT_THROW(search_labels("(", gs), RegexError);
}

TEST(SearchLabels, MatchesLinearScan) {
  std::mt19937 rng(37);
  const std::vector<std::string> names = {"Alice", "alfred", "Bob", "ALBERT", "Zoe", "Al", "xAl"};
  for (int round = 0; round < 100; ++round) {
    Graph g;
    int n = testing::uniform(rng, 0, 20);
    for (int i = 0; i < n; ++i)
      g.insert(rdf::Triple{rdf::Iri("http://ex.org/r" + std::to_string(testing::uniform(rng, 0, 9))),
                           rdf::Iri(testing::uniform(rng, 0, 3) ? rdf::vocab::kRdfsLabel : rdf::vocab::kRdfsComment),
                           Term::literal(testing::pick(rng, names))});
    const Graph* gs[] = {&g};
    std::vector<std::pair<std::string, std::string>> expected;
    for (const rdf::Triple& t : g) {
      const std::string& label = t.object.text();
      bool match = label.size() >= 2 && (label[0] == 'A' || label[0] == 'a') && (label[1] == 'L' || label[1] == 'l');
      if (t.predicate.str() == rdf::vocab::kRdfsLabel && match) expected.emplace_back(label, t.subject.str());
    }
    std::sort(expected.begin(), expected.end());
    std::vector<std::pair<std::string, std::string>> ours;
    for (const auto& hit : search_labels("^Al", gs)) ours.emplace_back(hit.label, hit.resource.str());
    ASSERT_EQ(ours, expected);
  }
}

TEST(ResultsJson, Format) {
  Graph g = graph_of("<http://ex.org/a> <http://ex.org/p> \"x\"@en, 5, \"s\" .");
  const Graph* gs[] = {&g};
  Query q = parse_query("SELECT ?s ?o WHERE { ?s ?p ?o }");
  auto j = results_to_json(q.result_variables(), evaluate(q, gs));
  EXPECT_EQ(j.dump(),
            R"({"head":{"vars":["s","o"]},"results":{"bindings":[)"
            R"({"s":{"type":"uri","value":"http://ex.org/a"},"o":{"type":"literal","value":"5","datatype":"http://www.w3.org/2001/XMLSchema#integer"}},)"
            R"({"s":{"type":"uri","value":"http://ex.org/a"},"o":{"type":"literal","value":"s"}},)"
            R"({"s":{"type":"uri","value":"http://ex.org/a"},"o":{"type":"literal","value":"x","xml:lang":"en"}}]}})");
}

}  // namespace
}  // namespace ldaf::query
