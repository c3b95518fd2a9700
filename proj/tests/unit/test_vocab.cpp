#include <doctest.h>

#include <set>

#include "support.hpp"
#include "trust/vocab.hpp"

using namespace trust;

TEST_CASE("IRIs need a scheme authority or a URN form") {
  CHECK(Iri::is_valid("http://example.org/a"));
  CHECK(Iri::is_valid("https://example.org/a#b"));
  CHECK(Iri::is_valid("urn:isbn:0451450523"));
  CHECK_FALSE(Iri::is_valid("example.org/a"));
  CHECK_FALSE(Iri::is_valid("http://exa mple.org"));
  CHECK_FALSE(Iri::is_valid("http://example.org/<x>"));
  CHECK_FALSE(Iri::is_valid("urn:"));
  CHECK_FALSE(Iri::is_valid(""));
  CHECK_THROWS_AS(Iri::from("nope"), std::invalid_argument);
  CHECK(Iri::from("http://x.org/").str() == "http://x.org/");
}

TEST_CASE("category names round-trip and ratings match the expert survey") {
  for (auto c : kAllCategories) CHECK(category_from_name(category_name(c)) == c);
  CHECK_FALSE(category_from_name("Nonsense").has_value());

  CHECK(expert_rating(TrustCategory::LegalData) == 1.2);
  CHECK(expert_rating(TrustCategory::Employee) == 1.4);
  CHECK(expert_rating(TrustCategory::CustomerReference) == 1.6);
  CHECK(expert_rating(TrustCategory::Certification) == 1.8);
  CHECK(expert_rating(TrustCategory::Facility) == 1.8);
  CHECK(expert_rating(TrustCategory::ProviderSystems) == 2.0);
  CHECK(expert_rating(TrustCategory::Partner) == 2.0);
  CHECK(expert_rating(TrustCategory::Publication) == 2.4);
  CHECK(expert_rating(TrustCategory::MarketplaceAnalytics) == 2.5);
  CHECK(expert_rating(TrustCategory::Terms) == 2.8);

  for (auto c : kAllCategories) CHECK(is_document_sourced(c) == (c != TrustCategory::MarketplaceAnalytics));
}

TEST_CASE("prefix tables reject duplicate labels and namespaces") {
  PrefixTable t;
  CHECK(t.insert("ex", "http://example.org/"));
  CHECK_FALSE(t.insert("ex", "http://other.org/"));
  CHECK_FALSE(t.insert("ex2", "http://example.org/"));
  CHECK(t.expand("ex:thing") == "http://example.org/thing");
  CHECK_FALSE(t.expand("nope:thing").has_value());
  CHECK(t.rebind("ex", "http://moved.org/"));
  CHECK(t.expand("ex:a") == "http://moved.org/a");
  CHECK_FALSE(t.rebind("missing", "http://x.org/"));
}

TEST_CASE("default namespaces cover the nine vocabularies") {
  const auto t = default_namespace_table();
  CHECK(t.size() == 9);
  for (const char* p : {"usdl", "usdl-trust", "tao", "foaf", "schema", "gr", "dc", "xsd", "rdf"}) {
    CHECK(t.lookup(p).has_value());
  }
  CHECK(t.lookup("schema") == "http://schema.org/");
  CHECK(t.lookup("rdf") == "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
  std::set<std::string> ns;
  for (const auto& [_, v] : t.entries()) ns.insert(v);
  CHECK(ns.size() == 9);
}

TEST_CASE("term lookup freezes the namespace table") {
  CHECK(term_iri("usdl-trust:Facility") == std::string(kPlaceholderBase) + "trust#Facility");
  CHECK_THROWS_AS(term_iri("unknown:Thing"), std::invalid_argument);
  CHECK_FALSE(configure_namespaces(default_namespace_table()));
}

TEST_CASE("class table: known classes, hierarchy and categories") {
  for (auto c : kAllCategories) {
    auto cls = class_for_category(c);
    if (c == TrustCategory::MarketplaceAnalytics) {
      CHECK_FALSE(cls.has_value());
      continue;
    }
    REQUIRE(cls.has_value());
    REQUIRE(lookup_class(*cls) != nullptr);
    CHECK(category_of(*cls) == c);
    CHECK((is_subclass_of(*cls, "TrustContent") || *cls == "Publication"));
  }
  CHECK(is_subclass_of("Transaction", "ServiceOffering"));
  CHECK(is_subclass_of("Publication", "CreativeWork"));
  CHECK(is_subclass_of("Facility", "Facility"));
  CHECK_FALSE(is_subclass_of("KPI", "TrustContent"));
  CHECK_FALSE(category_of("KPI").has_value());
  CHECK(class_for_iri(term_iri("usdl-trust:KPI")) == lookup_class("KPI"));
  CHECK(class_for_iri("http://nowhere.example/X") == nullptr);
}

TEST_CASE("each class declares each property at most once and node ranges resolve") {
  for (const auto& c : known_classes()) {
    std::set<std::string> seen;
    for (const auto& p : c.properties) {
      CHECK_MESSAGE(seen.insert(p.name).second, c.name << " repeats " << p.name);
      CHECK_NOTHROW(term_iri(p.name));
      if (p.range.kind == RangeKind::Node) CHECK_MESSAGE(lookup_class(p.range.node_class), p.range.node_class);
      if (p.requirement == Requirement::StructuralRequired) CHECK(p.cardinality.min >= 1);
      if (p.cardinality.max) CHECK(*p.cardinality.max >= p.cardinality.min);
    }
  }
}

TEST_CASE("the checked-in vocabulary reference is up to date") {
  const auto on_disk = testsupport::read_file(std::string(TRUST_SOURCE_DIR) + "/docs/vocabulary.md");
  CHECK(on_disk == vocabulary_reference_markdown());
}
