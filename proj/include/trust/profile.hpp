#pragma once

// Typed projection of a TrustGraph onto the trust-content categories.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trust/date.hpp"
#include "trust/result.hpp"
#include "trust/stad.hpp"
#include "trust/vocab.hpp"

namespace trust {

struct LegalData {
  std::optional<std::string> vat;
  std::optional<std::string> crn;
  std::optional<std::string> lei;
  std::optional<std::string> duns;
  std::optional<std::string> legal_form;
  std::vector<std::string> licenses;
};

struct Kpi {
  std::string name;
  double value = 0.0;
  std::optional<std::string> unit;
  std::optional<long long> year;
};

enum class SystemKind { Machine, Software, Quality, Organizational };

struct ProviderSystem {
  std::string name;
  std::optional<SystemKind> kind;
  std::optional<std::string> manufacturer;
  std::optional<Iri> image;
  std::optional<std::string> description;
};

struct Facility {
  std::string address;
  std::optional<Iri> image;
  std::vector<Kpi> kpis;
  std::optional<Iri> organization;
  std::vector<ProviderSystem> systems;
};

struct Employee {
  std::string name;
  std::optional<std::string> job_title;
  std::optional<std::string> honorific_prefix;
  std::optional<std::string> email;
  std::optional<std::string> telephone;
  std::optional<Iri> image;
  std::optional<std::string> expertise;
};

// Node identity of a transaction: the IRI, or "_:label" for blank nodes.
struct TransactionRef {
  std::string id;
  Date date;
  bool confidential = false;
};

struct CustomerReference {
  std::optional<std::string> customer_name;
  std::optional<Iri> customer_logo;
  std::optional<Iri> product_image;
  std::optional<std::string> product_description;
  std::optional<TransactionRef> transaction;
};

struct Certification {
  std::string standard;
  std::optional<std::string> issuer;
  std::optional<Iri> document;
  std::optional<std::string> description;
};

struct Partner {
  std::string name;
  std::optional<Iri> logo;
  std::optional<std::string> description;
  std::vector<Iri> social_networks;
};

enum class PublicationKind { SuccessStory, CompanyEvent, ResearchPaper, Newsfeed };
enum class PublicationSource { Professional, Internal };

struct Publication {
  std::string title;
  PublicationKind kind = PublicationKind::Newsfeed;
  std::optional<PublicationSource> source;
  std::optional<Iri> link;
};

enum class TermsKind { General, Delivery, Purchasing, Sales, Policy };

struct TermsDoc {
  TermsKind kind = TermsKind::General;
  std::optional<std::variant<Iri, std::string>> document;
};

struct ProviderWebsite {
  Iri url;
};

struct ProviderProfile {
  Iri provider_id;
  std::optional<LegalData> legal;
  std::vector<Facility> facilities;
  std::vector<Employee> employees;
  std::vector<CustomerReference> references;
  std::vector<Certification> certifications;
  std::vector<Partner> partners;
  std::vector<Publication> publications;
  std::vector<TermsDoc> terms;
  std::optional<ProviderWebsite> website;
};

struct ExtractError {
  std::string message;
};

// Projects the graph's single usdl:Provider node and the typed content nodes
// of the document. Unknown classes and properties are ignored; records whose
// required fields are missing or malformed are dropped rather than invented.
Result<ProviderProfile, ExtractError> extract_profile(const TrustGraph& graph);

std::string_view system_kind_name(SystemKind k);
std::string_view publication_kind_name(PublicationKind k);
std::string_view publication_source_name(PublicationSource s);
std::string_view terms_kind_name(TermsKind k);

}  // namespace trust
