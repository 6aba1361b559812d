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
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/store.hpp"
#include "ldaf/rdf/turtle.hpp"
#include "support/generators.hpp"

namespace ldaf::rdf {
namespace {

namespace fs = std::filesystem;

const std::string kBase = "http://ex.org/base";

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The reference parser writes numeric shorthand in canonical form and plain
/// strings without a datatype; bring our N-Triples into the same shape.
std::string canonical_ntriples_line(const Triple& t) {
  Term object = t.object;
  if (object.is_literal()) {
    const Literal& lit = object.as_literal();
    std::string lex = lit.lexical();
    if (lit.datatype() == vocab::kXsdInteger) {
      bool negative = !lex.empty() && lex[0] == '-';
      if (!lex.empty() && (lex[0] == '+' || lex[0] == '-')) lex.erase(0, 1);
      lex.erase(0, std::min(lex.find_first_not_of('0'), lex.size() - 1));
      object = Term(Literal((negative ? "-" : "") + lex, lit.datatype()));
    } else if (lit.datatype() == vocab::kXsdDecimal) {
      if (!lex.empty() && lex[0] == '+') lex.erase(0, 1);
      if (!lex.empty() && lex[0] == '.') lex.insert(0, "0");
      object = Term(Literal(lex, lit.datatype()));
    }
  }
  std::string line = to_ntriples(Triple{t.subject, t.predicate, object});
  const std::string typed = "^^<" + vocab::kXsdString + ">";
  if (auto pos = line.find(typed); pos != std::string::npos) line.erase(pos, typed.size());
  return line;
}

std::string canonical_reference_line(std::string line) {
  for (std::size_t pos; (pos = line.find('\t')) != std::string::npos;) line.replace(pos, 1, "\\t");
  const std::string typed = "^^<" + vocab::kXsdString + ">";
  if (auto pos = line.find(typed); pos != std::string::npos) line.erase(pos, typed.size());
  return line;
}

TEST(TurtleParse, SinglePrefixedTriple) {
  auto triples = parse_turtle("@prefix ex: <http://ex.org/> . ex:a ex:p ex:b .", kBase);
  ASSERT_EQ(triples.size(), 1u);
  const Triple& t = *triples.begin();
  EXPECT_EQ(t.subject.str(), "http://ex.org/a");
  EXPECT_EQ(t.predicate.str(), "http://ex.org/p");
  EXPECT_EQ(t.object, Term::iri("http://ex.org/b"));
}

TEST(TurtleParse, EmptyInputIsEmptyGraph) {
  EXPECT_TRUE(parse_turtle("", kBase).empty());
  EXPECT_TRUE(parse_turtle("  # only a comment\n", kBase).empty());
}

TEST(TurtleParse, IntegerShorthand) {
  auto triples = parse_turtle("@prefix ex: <http://ex.org/> .\nex:a ex:p 5 .", kBase);
  ASSERT_EQ(triples.size(), 1u);
  EXPECT_EQ(triples.begin()->object, Term::literal("5", vocab::kXsdInteger));
}

// Expected triples were produced by rdflib from the same files (tests/data/turtle/*.nt).
TEST(TurtleParse, AgreesWithReferenceParserOnCorpus) {
  fs::path dir = fs::path(LDAF_TEST_DATA_DIR) / "turtle";
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".ttl") continue;
    ++files;
    std::vector<std::string> ours;
    for (const Triple& t : parse_turtle(read(entry.path()), "file:///unused/"))
      ours.push_back(canonical_ntriples_line(t));
    std::sort(ours.begin(), ours.end());
    std::vector<std::string> expected;
    std::istringstream ref(read(fs::path(entry.path()).replace_extension(".nt")));
    for (std::string line; std::getline(ref, line);)
      if (!line.empty()) expected.push_back(canonical_reference_line(line));
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(ours, expected) << entry.path().filename();
  }
  EXPECT_GE(files, 3);
}

TEST(TurtleParse, UnsupportedConstructsAreReportedWithLocation) {
  const std::string prolog = "@prefix ex: <http://ex.org/> .\n";
  for (const std::string body : {"ex:a ex:p ( ex:b ) .", "ex:a ex:p [ ex:q ex:b ] .", "ex:a ex:p \"\"\"x\"\"\" .",
                                 "[] ex:p ex:b .", "ex:a ex:p 1.0e3 ."}) {
    try {
      parse_turtle(prolog + body, kBase);
      FAIL() << "accepted: " << body;
    } catch (const ParseError& e) {
      EXPECT_NE(e.message().find("unsupported Turtle feature"), std::string::npos) << e.what();
      EXPECT_EQ(e.line(), 2u) << body;
      EXPECT_GT(e.column(), 1u - (body[0] == '[' ? 1u : 0u)) << body;
    }
  }
}

TEST(TurtleParse, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_turtle("@prefix ex: <http://ex.org/> .\nex:a ex:p .", kBase);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
  }
  EXPECT_THROW(parse_turtle("nope:a nope:b nope:c .", kBase), ParseError);
  EXPECT_THROW(parse_turtle("<http://ex.org/a> <http://ex.org/p> \"open", kBase), ParseError);
  EXPECT_THROW(parse_turtle("\"lit\" <http://ex.org/p> <http://ex.org/o> .", kBase), ParseError);
  EXPECT_THROW(parse_turtle("<http://ex.org/a> <http://ex.org/p> <http://ex.org/o>", kBase), ParseError);
}

TEST(TurtleParse, BlankNodesAreSkolemizedPerParse) {
  const std::string doc =
      "@prefix ex: <http://ex.org/> .\n_:x ex:p _:y .\n_:y ex:p _:x .\n_:x ex:q \"v\" .";
  auto first = parse_turtle(doc, "http://app.example/");
  ASSERT_EQ(first.size(), 3u);
  std::set<std::string> skolems;
  for (const Triple& t : first) {
    skolems.insert(t.subject.str());
    if (t.object.is_iri()) skolems.insert(t.object.as_iri().str());
  }
  ASSERT_EQ(skolems.size(), 2u);
  for (const auto& s : skolems) {
    EXPECT_TRUE(s.starts_with("http://app.example/.well-known/genid/")) << s;
    EXPECT_EQ(s.size(), std::string("http://app.example/.well-known/genid/").size() + 2 + 8);
  }
  auto second = parse_turtle(doc, "http://app.example/");
  EXPECT_NE(first, second);
}

TEST(TurtleSerialize, EmptySetHasOnlySortedPrefixes) {
  PrefixMap prefixes = {{"xsd", std::string(vocab::kXsd)}, {"ex", "http://ex.org/"}};
  EXPECT_EQ(serialize_turtle(std::set<Triple>{}, prefixes),
            "@prefix ex: <http://ex.org/> .\n"
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n");
}

TEST(TurtleSerialize, UsesPrefixedNames) {
  PrefixMap prefixes = {{"ex", "http://ex.org/"}};
  std::set<Triple> triples = {Triple{Iri("http://ex.org/a"), Iri("http://ex.org/p"), Term::iri("http://ex.org/b")}};
  EXPECT_EQ(serialize_turtle(triples, prefixes), "@prefix ex: <http://ex.org/> .\n\nex:a ex:p ex:b .\n");
}

TEST(TurtleSerialize, GroupsAndEscapes) {
  PrefixMap prefixes = {{"ex", "http://ex.org/"}};
  std::set<Triple> triples = {
      Triple{Iri("http://ex.org/a"), Iri(vocab::kRdfType), Term::iri("http://ex.org/C")},
      Triple{Iri("http://ex.org/a"), Iri("http://ex.org/p"), Term::literal("say \"hi\"\n")},
      Triple{Iri("http://ex.org/a"), Iri("http://ex.org/p"), Term::literal("12", vocab::kXsdInteger)},
      Triple{Iri("http://ex.org/b"), Iri("http://ex.org/p"), Term::iri("http://ex.org/x y")},
  };
  EXPECT_EQ(serialize_turtle(triples, prefixes),
            "@prefix ex: <http://ex.org/> .\n\n"
            "ex:a ex:p 12, \"say \\\"hi\\\"\\n\" ;\n"
            "    a ex:C .\n\n"
            "ex:b ex:p <http://ex.org/x\\u0020y> .\n");
}

TEST(TurtleSerialize, RoundTripsRandomGraphs) {
  std::mt19937 rng(7);
  auto vocab = testing::Vocabulary::make(10, 6);
  PrefixMap prefixes = {{"ex", "http://ex.org/r/"}, {"onto", "http://ex.org/onto#"}, {"xsd", std::string(vocab::kXsd)}};
  for (int i = 0; i < 300; ++i) {
    auto triples = testing::random_triples(rng, vocab, 30);
    if (i % 3 == 0)
      triples.insert(Triple{testing::random_awkward_iri(rng), testing::pick(rng, vocab.predicates),
                            Term(testing::random_awkward_iri(rng))});
    std::string text = serialize_turtle(triples, prefixes);
    ASSERT_EQ(parse_turtle(text, kBase), triples) << text;
  }
}

TEST(GraphOps, MatchInsertRemove) {
  Graph g(Iri("http://ex.org/g"));
  Triple a{Iri("http://ex.org/a"), Iri("http://ex.org/p"), Term::iri("http://ex.org/b")};
  Triple b{Iri("http://ex.org/a"), Iri("http://ex.org/q"), Term::literal("x")};
  Triple c{Iri("http://ex.org/c"), Iri("http://ex.org/p"), Term::iri("http://ex.org/b")};
  EXPECT_TRUE(g.insert(a));
  EXPECT_FALSE(g.insert(a));
  g.insert(b);
  g.insert(c);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.match({}).size(), 3u);
  EXPECT_EQ(g.match({std::nullopt, std::nullopt, Term::iri("http://ex.org/b")}).size(), 2u);
  EXPECT_EQ(g.remove(TriplePattern{std::nullopt, Iri("http://ex.org/p"), std::nullopt}), 2u);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.remove(a), 0u);
}

TEST(GraphOps, MatchEqualsLinearFilter) {
  std::mt19937 rng(11);
  auto vocab = testing::Vocabulary::make();
  for (int round = 0; round < 200; ++round) {
    Graph g(Iri("http://ex.org/g"));
    auto triples = testing::random_triples(rng, vocab, 40);
    g.insert_all(triples);
    TriplePattern pattern;
    if (testing::uniform(rng, 0, 1)) pattern.subject = testing::pick(rng, vocab.nodes);
    if (testing::uniform(rng, 0, 1)) pattern.predicate = testing::pick(rng, vocab.predicates);
    if (testing::uniform(rng, 0, 2) == 0) pattern.object = Term(testing::pick(rng, vocab.nodes));
    std::vector<Triple> expected;
    for (const Triple& t : triples)
      if ((!pattern.subject || t.subject == *pattern.subject) &&
          (!pattern.predicate || t.predicate == *pattern.predicate) && (!pattern.object || t.object == *pattern.object))
        expected.push_back(t);
    ASSERT_EQ(g.match(pattern), expected);
    for (const Triple& t : triples)
      ASSERT_EQ(g.match(TriplePattern{t.subject, t.predicate, t.object}).size(), 1u);
  }
}

TEST(DatasetOps, UnknownGraphAndStandardPrefixes) {
  Dataset ds;
  EXPECT_THROW(ds.graph(Iri("http://ex.org/none")), std::out_of_range);
  EXPECT_THROW(ds.match(Iri("http://ex.org/none"), {}), std::out_of_range);
  EXPECT_EQ(ds.prefixes().at("rdf"), vocab::kRdf);
  EXPECT_EQ(ds.prefixes().at("rdfs"), vocab::kRdfs);
  EXPECT_EQ(ds.prefixes().at("xsd"), vocab::kXsd);
  ds.set_prefixes({{"ex", "http://ex.org/"}});
  EXPECT_EQ(ds.prefixes().size(), 4u);
}

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ldaf_store_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(StoreTest, GraphFileNameIsPercentEncoded) {
  EXPECT_EQ(graph_file(dir_, Iri("http://ex.org/g")).filename().string(), "http%3A%2F%2Fex.org%2Fg.ttl");
  EXPECT_EQ(percent_decode("http%3A%2F%2Fex.org%2Fg"), "http://ex.org/g");
}

TEST_F(StoreTest, EmptyDirectoryLoadsEmptyDataset) {
  Dataset ds = load_dataset(dir_);
  EXPECT_TRUE(ds.graphs().empty());
  EXPECT_EQ(ds.prefixes().size(), 3u);
}

TEST_F(StoreTest, SaveThenLoadRoundTrips) {
  std::mt19937 rng(3);
  auto vocab = testing::Vocabulary::make();
  Dataset ds;
  ds.set_prefix("ex", "http://ex.org/r/");
  for (const char* name : {"http://ex.org/g1", "http://ex.org/g2"}) {
    Graph& g = ds.ensure_graph(Iri(name));
    g.insert_all(testing::random_triples(rng, vocab, 40));
  }
  save_dataset(ds, dir_);
  for (const auto& entry : fs::directory_iterator(dir_)) EXPECT_NE(entry.path().extension(), ".tmp");
  EXPECT_EQ(load_dataset(dir_), ds);
}

TEST_F(StoreTest, ParseFailureNamesTheFile) {
  std::ofstream(dir_ / "http%3A%2F%2Fex.org%2Fbad.ttl") << "this is not turtle";
  try {
    load_dataset(dir_);
    FAIL();
  } catch (const StoreError& e) {
    EXPECT_NE(std::string(e.what()).find("http%3A%2F%2Fex.org%2Fbad.ttl"), std::string::npos);
  }
}

TEST_F(StoreTest, MissingDirectoryIsAnError) { EXPECT_THROW(load_dataset(dir_ / "missing"), StoreError); }

}  // namespace
}  // namespace ldaf::rdf
