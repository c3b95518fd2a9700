#include <doctest.h>

#include <set>

#include "support.hpp"
#include "trust/shapes.hpp"

using namespace trust;
using testsupport::fixture_graph;
using testsupport::without;

namespace {

const std::string kHead =
    "@prefix usdl: <http://example.org/usdl-trust/usdl#> .\n"
    "@prefix usdl-trust: <http://example.org/usdl-trust/trust#> .\n"
    "@prefix schema: <http://schema.org/> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
    "@prefix ex: <http://example.org/> .\n";

ValidationReport validate_text(const std::string& body) {
  return validate_graph(testsupport::parse_or_throw(kHead + body));
}

std::set<std::string> codes(const std::vector<Finding>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(std::string(finding_code_id(f.code)));
  return out;
}

}  // namespace

TEST_CASE("finding codes") {
  CHECK(finding_code_id(FindingCode::MissingRequired) == "E101");
  CHECK(finding_code_id(FindingCode::RangeViolation) == "E102");
  CHECK(finding_code_id(FindingCode::CardinalityViolation) == "E103");
  CHECK(finding_code_id(FindingCode::DanglingReference) == "E104");
  CHECK(finding_code_id(FindingCode::AdvisoryMissing) == "W201");
  CHECK_FALSE(is_error(FindingCode::AdvisoryMissing));
  CHECK(is_error(FindingCode::DanglingReference));
}

TEST_CASE("shape table mirrors the vocabulary descriptors") {
  std::size_t required = 0;
  for (const auto& shape : shape_table()) {
    const auto* cls = lookup_class(shape.target_class);
    REQUIRE(cls != nullptr);
    CHECK(shape.required.size() + shape.optional.size() == cls->properties.size());
    for (const auto& r : shape.required) {
      const auto* p = cls->property(r.property);
      REQUIRE(p != nullptr);
      CHECK(p->requirement == Requirement::StructuralRequired);
      ++required;
    }
  }
  CHECK(required == 12);
  REQUIRE(shape_for("LegalData") != nullptr);
  CHECK(shape_for("LegalData")->one_of.size() == 1);
  CHECK(shape_for("TrustContent") == nullptr);
  CHECK(shape_for("Transaction")->required.front().property == "usdl-trust:transactionDate");
}

TEST_CASE("the shipped fixtures conform") {
  for (const char* name : {"acme.stad", "beta.stad", "gamma.stad", "empty.stad", "legal-only.stad"}) {
    CAPTURE(name);
    CHECK(validate_graph(fixture_graph(name)).valid);
  }
  const auto acme = validate_graph(fixture_graph("acme.stad"));
  CHECK(acme.errors.empty());
  CHECK(acme.warnings.empty());
}

TEST_CASE("E101 for a transaction without a date") {
  const auto r = validate_graph(fixture_graph("missing-date.stad"));
  CHECK_FALSE(r.valid);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].code == FindingCode::MissingRequired);
  CHECK(r.errors[0].property == "usdl-trust:transactionDate");
  CHECK(r.errors[0].node == Term::iri("http://broken.example.org/tx"));
}

TEST_CASE("deleting any required property yields exactly E101 for it") {
  const auto base = fixture_graph("acme.stad");
  std::size_t covered = 0;
  for (const auto& shape : shape_table()) {
    for (const auto& req : shape.required) {
      const auto nodes = base.subjects_of_type(term_iri(lookup_class(shape.target_class)->curie));
      REQUIRE_MESSAGE(!nodes.empty(), "fixture has no " << shape.target_class);
      const Term node = nodes.front();
      const std::string pred = term_iri(req.property);
      const auto mutated = without(base, [&](const Triple& t) { return t.subject == node && t.predicate.value == pred; });
      REQUIRE(mutated.size() < base.size());
      const auto r = validate_graph(mutated);
      CAPTURE(shape.target_class);
      CAPTURE(req.property);
      REQUIRE(r.errors.size() == 1);
      CHECK(r.errors[0].code == FindingCode::MissingRequired);
      CHECK(r.errors[0].node == node);
      CHECK(r.errors[0].property == req.property);

      TrustGraph restored = mutated;
      for (const auto& t : base.triples()) restored.insert(t);
      CHECK(validate_graph(restored).valid);
      ++covered;
    }
  }
  CHECK(covered == 12);
}

TEST_CASE("legal data needs at least one identifier") {
  const auto r = validate_text("ex:l a usdl-trust:LegalData ; usdl-trust:legalForm \"GmbH\" .\n");
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].code == FindingCode::MissingRequired);
  CHECK(r.errors[0].property == "usdl-trust:vatNumber");
  CHECK(validate_text("ex:l a usdl-trust:LegalData ; usdl-trust:dunsNumber \"1\" .\n").valid);
}

TEST_CASE("E102 range violations") {
  auto one = [](const std::string& body, const std::string& property) {
    const auto r = validate_text(body);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].code == FindingCode::RangeViolation);
    CHECK(r.errors[0].property == property);
  };
  one("ex:w a usdl-trust:ProviderWebsite ; usdl-trust:url \"https://x.org\" .\n", "usdl-trust:url");
  one("ex:t a usdl-trust:Transaction ; usdl-trust:transactionDate \"2021-01-01\" .\n",
      "usdl-trust:transactionDate");
  one("ex:p a usdl-trust:Publication ; schema:headline \"h\" ; usdl-trust:publicationKind \"blog\" .\n",
      "usdl-trust:publicationKind");
  one("ex:k a usdl-trust:KPI ; schema:name \"n\" ; schema:value \"12\" .\n", "schema:value");
  one("ex:k a usdl-trust:KPI ; schema:name 5 ; schema:value 12 .\n", "schema:name");
  one("ex:f a usdl-trust:Facility ; usdl-trust:address \"a\" ; usdl-trust:hasKPI ex:e .\n"
      "ex:e a usdl-trust:Employee ; schema:name \"n\" .\n",
      "usdl-trust:hasKPI");
  one("ex:f a usdl-trust:Facility ; usdl-trust:address \"a\" ; usdl-trust:hasSystem \"lathe\" .\n",
      "usdl-trust:hasSystem");
}

TEST_CASE("E103 cardinality and E104 dangling references") {
  auto r = validate_text("ex:w a usdl-trust:ProviderWebsite ; usdl-trust:url <http://a.org> , <http://b.org> .\n");
  CHECK(codes(r.errors) == std::set<std::string>{"E103"});

  r = validate_text("ex:p a usdl:Provider ; usdl-trust:hasWebsite ex:w1 , ex:w2 .\n"
                    "ex:w1 a usdl-trust:ProviderWebsite ; usdl-trust:url <http://a.org> .\n"
                    "ex:w2 a usdl-trust:ProviderWebsite ; usdl-trust:url <http://b.org> .\n");
  CHECK(codes(r.errors) == std::set<std::string>{"E103"});

  r = validate_text("ex:p a usdl:Provider ; usdl-trust:hasFacility ex:ghost .\n");
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].code == FindingCode::DanglingReference);
  CHECK(r.errors[0].node == Term::iri("http://example.org/p"));
}

TEST_CASE("untyped and unknown-typed targets are accepted") {
  CHECK(validate_text("ex:p a usdl:Provider ; usdl-trust:hasFacility ex:f .\n"
                      "ex:f usdl-trust:address \"somewhere\" .\n")
            .valid);
  CHECK(validate_text("ex:p a usdl:Provider ; usdl-trust:hasFacility ex:f .\n"
                      "ex:f a <http://other.example/Plant> .\n")
            .valid);
}

TEST_CASE("W201 advisories for missing must/should categories") {
  const auto r = validate_graph(fixture_graph("empty.stad"));
  CHECK(r.valid);
  CHECK(r.errors.empty());
  REQUIRE(r.warnings.size() == 7);
  std::set<std::string> classes;
  for (const auto& w : r.warnings) {
    CHECK(w.code == FindingCode::AdvisoryMissing);
    CHECK_FALSE(w.property.has_value());
    classes.insert(w.node.value);
  }
  CHECK(classes.count(term_iri("usdl-trust:Terms")) == 0);
  CHECK(classes.count(term_iri("usdl-trust:Publication")) == 0);
  CHECK(classes.count(term_iri("usdl-trust:LegalData")) == 1);
  for (const auto& w : r.warnings) {
    if (w.node.value == term_iri("usdl-trust:LegalData") || w.node.value == term_iri("usdl-trust:Employee")) {
      CHECK(w.message.find("(must)") != std::string::npos);
    } else {
      CHECK(w.message.find("(should)") != std::string::npos);
    }
  }
}

TEST_CASE("findings are sorted and unique") {
  const auto r = validate_text(
      "ex:z a usdl-trust:Transaction .\n"
      "ex:a a usdl-trust:Transaction .\n"
      "ex:a a usdl-trust:Transaction .\n"
      "ex:m a usdl-trust:Certification .\n");
  REQUIRE(r.errors.size() == 3);
  CHECK(r.errors[0].node.value == "http://example.org/a");
  CHECK(r.errors[1].node.value == "http://example.org/m");
  CHECK(r.errors[2].node.value == "http://example.org/z");
}
