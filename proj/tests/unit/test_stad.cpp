#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "trust/stad.hpp"

using namespace trust;
using testsupport::read_fixture;

namespace {

const std::string kHead = "@prefix ex: <http://example.org/> .\n";

ParseError parse_error(const std::string& text) {
  auto r = parse_document(text);
  REQUIRE_FALSE(r.ok());
  return r.error();
}

void check_error(const std::string& text, ParseCode code, std::size_t line, std::size_t column) {
  const auto e = parse_error(text);
  CHECK_MESSAGE(e.code == code, text << " -> " << parse_code_id(e.code) << " " << e.message);
  CHECK_MESSAGE(e.line == line, text);
  CHECK_MESSAGE(e.column == column, text << " -> col " << e.column);
}

// Same graph with every blank label replaced by a fresh random one.
TrustGraph relabel(const TrustGraph& g, std::mt19937_64& rng) {
  std::map<std::string, std::string> names;
  auto map = [&](const Term& t) {
    if (!t.is_blank()) return t;
    auto [it, fresh] = names.emplace(t.value, "");
    if (fresh) it->second = "r" + std::to_string(rng() % 1000000) + "x" + std::to_string(names.size());
    return Term::blank(it->second);
  };
  TrustGraph out;
  for (const auto& t : g.triples()) out.insert({map(t.subject), t.predicate, map(t.object)});
  return out;
}

}  // namespace

TEST_CASE("parse codes have stable identifiers") {
  CHECK(parse_code_id(ParseCode::UnexpectedChar) == "P001");
  CHECK(parse_code_id(ParseCode::UnterminatedString) == "P002");
  CHECK(parse_code_id(ParseCode::BadPrefix) == "P003");
  CHECK(parse_code_id(ParseCode::UnknownPrefix) == "P004");
  CHECK(parse_code_id(ParseCode::BadLiteral) == "P005");
  CHECK(parse_code_id(ParseCode::MissingDot) == "P006");
  CHECK(parse_code_id(ParseCode::BadIri) == "P007");
}

TEST_CASE("basic statements, lists and the a keyword") {
  auto g = parse_document(kHead + "ex:s a ex:C ; ex:p ex:o1 , ex:o2 ; ex:q \"v\" .\n");
  REQUIRE(g);
  CHECK(g->size() == 4);
  CHECK(g->contains({Term::iri("http://example.org/s"), Term::iri(std::string(kRdfType)),
                     Term::iri("http://example.org/C")}));
  CHECK(g->contains({Term::iri("http://example.org/s"), Term::iri("http://example.org/q"), Term::literal("v")}));
  CHECK(g->prefixes().lookup("ex") == "http://example.org/");
}

TEST_CASE("literal forms") {
  auto g = parse_document(kHead +
                          "ex:s ex:p 12 , -3.5 , true , \"x\"@en-GB , \"2024-01-31\"^^<http://www.w3.org/2001/"
                          "XMLSchema#date> , \"s\"^^<http://www.w3.org/2001/XMLSchema#string> .\n");
  REQUIRE(g);
  const auto objs = g->objects(Term::iri("http://example.org/s"), "http://example.org/p");
  CHECK(objs.size() == 6);
  CHECK(std::count(objs.begin(), objs.end(), Term::typed_literal("12", std::string(kXsd) + "integer")) == 1);
  CHECK(std::count(objs.begin(), objs.end(), Term::typed_literal("-3.5", std::string(kXsd) + "decimal")) == 1);
  CHECK(std::count(objs.begin(), objs.end(), Term::typed_literal("true", std::string(kXsd) + "boolean")) == 1);
  CHECK(std::count(objs.begin(), objs.end(), Term::lang_literal("x", "en-GB")) == 1);
  CHECK(std::count(objs.begin(), objs.end(), Term::literal("s")) == 1);
}

TEST_CASE("string escapes") {
  auto g = parse_document(kHead + "ex:s ex:p \"a\\\"b\\\\c\\nd\\te\" .\n");
  REQUIRE(g);
  CHECK(g->triples().begin()->object.value == "a\"b\\c\nd\te");
  check_error(kHead + "ex:s ex:p \"bad \\u0041 escape\" .\n", ParseCode::BadLiteral, 2, 16);
}

TEST_CASE("error codes with positions") {
  SUBCASE("P001 unexpected character") {
    check_error(kHead + "ex:s ex:p ex:o ?\n", ParseCode::UnexpectedChar, 2, 16);
    check_error("@base <http://x.org/> .\n", ParseCode::UnexpectedChar, 1, 1);
    check_error(kHead + "ex:s ex:p [ ex:q ex:o ] .\n", ParseCode::UnexpectedChar, 2, 11);
  }
  SUBCASE("P002 unterminated string") {
    check_error(kHead + "ex:s ex:p \"open\n\" .\n", ParseCode::UnterminatedString, 2, 11);
    check_error(kHead + "ex:s ex:p \"never closed", ParseCode::UnterminatedString, 2, 11);
  }
  SUBCASE("P003 malformed prefix directive") {
    check_error("@prefix 1ex: <http://x.org/> .\n", ParseCode::BadPrefix, 1, 9);
    check_error("@prefix ex: http://x.org/ .\n", ParseCode::BadPrefix, 1, 13);
  }
  SUBCASE("P004 undeclared prefix") {
    check_error(kHead + "ex:s nope:p ex:o .\n", ParseCode::UnknownPrefix, 2, 6);
  }
  SUBCASE("P005 malformed literal") {
    check_error(kHead + "ex:s ex:p \"2023-02-30\"^^<http://www.w3.org/2001/XMLSchema#date> .\n",
                ParseCode::BadLiteral, 2, 11);
    check_error(kHead + "ex:s ex:p \"1x\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n", ParseCode::BadLiteral,
                2, 11);
    check_error(kHead + "ex:s ex:p 12abc .\n", ParseCode::BadLiteral, 2, 11);
  }
  SUBCASE("P006 missing terminator") {
    check_error(kHead + "ex:s ex:p ex:o\n", ParseCode::MissingDot, 3, 1);
    check_error(kHead + "ex:s ex:p ex:o\nex:t ex:p ex:o .\n", ParseCode::MissingDot, 3, 1);
    check_error(kHead + "ex:s ex:p", ParseCode::MissingDot, 2, 10);
  }
  SUBCASE("P007 malformed IRI") {
    check_error(kHead + "ex:s ex:p <not an iri> .\n", ParseCode::BadIri, 2, 11);
    check_error(kHead + "ex:s ex:p <relative/path> .\n", ParseCode::BadIri, 2, 11);
  }
}

TEST_CASE("columns count characters, not bytes") {
  check_error(kHead + "ex:s ex:p \"äöü\" ?\n", ParseCode::UnexpectedChar, 2, 17);
}

TEST_CASE("invalid UTF-8 and oversize input are rejected") {
  check_error(kHead + "ex:s ex:p \"\xff\" .\n", ParseCode::UnexpectedChar, 2, 12);
  std::string big(kMaxDocumentBytes + 1, ' ');
  check_error(big, ParseCode::UnexpectedChar, 1, 1);
}

TEST_CASE("'a' is only a verb") {
  check_error(kHead + "ex:s ex:p a .\n", ParseCode::UnexpectedChar, 2, 11);
}

TEST_CASE("empty and comment-only documents parse to empty graphs") {
  CHECK(parse_document("")->empty());
  CHECK(parse_document("# nothing\n\n   # here\n")->empty());
  CHECK(parse_document(kHead)->empty());
}

TEST_CASE("serialization is canonical and re-parses to the same graph") {
  for (const char* name : {"acme.stad", "edge-literals.stad", "edge-blanks.stad", "edge-syntax.stad", "empty.stad",
                           "beta.stad", "gamma.stad", "legal-only.stad"}) {
    CAPTURE(name);
    const auto g = testsupport::fixture_graph(name);
    const auto text = serialize_graph(g);
    auto g2 = parse_document(text);
    REQUIRE(g2);
    CHECK(canonicalize_blanks(*g2) == canonicalize_blanks(g));
    CHECK(serialize_graph(*g2) == text);
  }
}

TEST_CASE("serialization ignores insertion order and blank labels") {
  std::mt19937_64 rng(11);
  for (const char* name : {"acme.stad", "edge-blanks.stad"}) {
    const auto g = testsupport::fixture_graph(name);
    const auto reference = serialize_graph(g);
    for (int round = 0; round < 20; ++round) {
      std::vector<Triple> triples(g.triples().begin(), g.triples().end());
      std::shuffle(triples.begin(), triples.end(), rng);
      TrustGraph shuffled;
      for (auto& t : triples) shuffled.insert(t);
      const auto renamed = relabel(shuffled, rng);
      CHECK(serialize_graph(renamed) == reference);
      CHECK(canonicalize_blanks(renamed) == canonicalize_blanks(g));
    }
  }
}

TEST_CASE("canonical output layout") {
  const auto text = serialize_graph(testsupport::fixture_graph("gamma.stad"));
  CHECK(text.rfind("@prefix dc: <http://purl.org/dc/terms/> .\n", 0) == 0);
  CHECK(text.find("\n\n<http://gamma.example.org/provider> usdl-trust:hasFacility <http://gamma.example.org/site> .\n") !=
        std::string::npos);
  CHECK(text.find("\n<http://gamma.example.org/provider> a usdl:Provider .\n") != std::string::npos);
  CHECK(text.find("usdl-trust:address \"Hauptplatz 1, Linz\" .\n") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(serialize_graph(TrustGraph{}).find("\n\n") == std::string::npos);
}

TEST_CASE("graphs that differ beyond blank labels stay different") {
  const auto a = parse_document(kHead + "_:x ex:p _:y . _:y ex:p _:x .\n");
  const auto b = parse_document(kHead + "_:x ex:p _:x . _:y ex:p _:y .\n");
  REQUIRE(a);
  REQUIRE(b);
  CHECK_FALSE(canonicalize_blanks(*a) == canonicalize_blanks(*b));
  CHECK(serialize_graph(*a) != serialize_graph(*b));
}

TEST_CASE("mutated inputs never crash the parser") {
  const std::string seed_text = read_fixture("acme.stad");
  std::mt19937_64 rng(2024);
  const std::string alphabet = " \n\t.;,:<>\"@^_#a0-xyz\\\xc3\xff";
  std::size_t ok = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string text = seed_text;
    const int edits = 1 + static_cast<int>(rng() % 8);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0: text.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        case 1: if (pos < text.size()) text.erase(pos, 1 + rng() % 5); break;
        default: if (pos < text.size()) text[pos] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    auto r = parse_document(text);
    if (r) {
      ++ok;
    } else {
      CHECK(r.error().line >= 1);
      CHECK(r.error().column >= 1);
    }
  }
  MESSAGE(ok << " of 1000 mutants still parsed");
}
