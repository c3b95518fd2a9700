#include "trust/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace trust {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool has_forbidden_iri_char(std::string_view s) {
  for (unsigned char c : s) {
    if (c <= 0x20) return true;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return true;
      default:
        break;
    }
  }
  return false;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !is_alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.';
  });
}

bool valid_urn(std::string_view s) {
  if (s.size() < 4) return false;
  std::string lower(s.substr(0, 4));
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower != "urn:") return false;
  auto rest = s.substr(4);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 32) return false;
  auto nid = rest.substr(0, colon);
  if (!is_alpha(nid[0]) && !is_digit(nid[0])) return false;
  for (char c : nid) {
    if (!is_alpha(c) && !is_digit(c) && c != '-') return false;
  }
  return colon + 1 < rest.size();
}

}  // namespace

bool Iri::is_valid(std::string_view text) {
  if (text.empty() || has_forbidden_iri_char(text)) return false;
  auto sep = text.find("://");
  if (sep != std::string_view::npos && valid_scheme(text.substr(0, sep))) return true;
  return valid_urn(text);
}

std::optional<Iri> Iri::make(std::string_view text) {
  if (!is_valid(text)) return std::nullopt;
  return Iri(std::string(text));
}

Iri Iri::from(std::string_view text) {
  auto iri = make(text);
  if (!iri) throw std::invalid_argument("not an absolute IRI: '" + std::string(text) + "'");
  return *iri;
}

std::string_view category_name(TrustCategory c) {
  switch (c) {
    case TrustCategory::CustomerReference: return "CustomerReference";
    case TrustCategory::Certification: return "Certification";
    case TrustCategory::Facility: return "Facility";
    case TrustCategory::ProviderSystems: return "ProviderSystems";
    case TrustCategory::Employee: return "Employee";
    case TrustCategory::Partner: return "Partner";
    case TrustCategory::LegalData: return "LegalData";
    case TrustCategory::Terms: return "Terms";
    case TrustCategory::Publication: return "Publication";
    case TrustCategory::MarketplaceAnalytics: return "MarketplaceAnalytics";
  }
  return "";
}

std::optional<TrustCategory> category_from_name(std::string_view name) {
  for (auto c : kAllCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

double expert_rating(TrustCategory c) {
  switch (c) {
    case TrustCategory::LegalData: return 1.2;
    case TrustCategory::Employee: return 1.4;
    case TrustCategory::CustomerReference: return 1.6;
    case TrustCategory::Certification: return 1.8;
    case TrustCategory::Facility: return 1.8;
    case TrustCategory::ProviderSystems: return 2.0;
    case TrustCategory::Partner: return 2.0;
    case TrustCategory::Publication: return 2.4;
    case TrustCategory::MarketplaceAnalytics: return 2.5;
    case TrustCategory::Terms: return 2.8;
  }
  return 4.0;
}

bool is_document_sourced(TrustCategory c) { return c != TrustCategory::MarketplaceAnalytics; }

// ---------------------------------------------------------------------------
// Prefix table

bool PrefixTable::insert(std::string label, std::string namespace_iri) {
  if (entries_.count(label)) return false;
  for (const auto& [_, ns] : entries_) {
    if (ns == namespace_iri) return false;
  }
  entries_.emplace(std::move(label), std::move(namespace_iri));
  return true;
}

bool PrefixTable::rebind(const std::string& label, std::string namespace_iri) {
  auto it = entries_.find(label);
  if (it == entries_.end()) return false;
  for (const auto& [other, ns] : entries_) {
    if (other != label && ns == namespace_iri) return false;
  }
  it->second = std::move(namespace_iri);
  return true;
}

std::optional<std::string> PrefixTable::lookup(std::string_view label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> PrefixTable::expand(std::string_view curie) const {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto ns = lookup(curie.substr(0, colon));
  if (!ns) return std::nullopt;
  return *ns + std::string(curie.substr(colon + 1));
}

PrefixTable default_namespace_table() {
  const std::string base(kPlaceholderBase);
  PrefixTable t;
  t.insert("usdl", base + "usdl#");
  t.insert("usdl-trust", base + "trust#");
  t.insert("tao", base + "tao#");
  t.insert("foaf", "http://xmlns.com/foaf/0.1/");
  t.insert("schema", "http://schema.org/");
  t.insert("gr", "http://purl.org/goodrelations/v1#");
  t.insert("dc", "http://purl.org/dc/terms/");
  t.insert("xsd", "http://www.w3.org/2001/XMLSchema#");
  t.insert("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
  return t;
}

namespace {

constexpr std::array<std::string_view, 9> kMandatoryPrefixes = {
    "usdl", "usdl-trust", "tao", "foaf", "schema", "gr", "dc", "xsd", "rdf"};

struct NamespaceState {
  std::mutex mu;
  bool frozen = false;
  PrefixTable table = default_namespace_table();
};

NamespaceState& ns_state() {
  static NamespaceState s;
  return s;
}

}  // namespace

bool configure_namespaces(PrefixTable table) {
  for (auto p : kMandatoryPrefixes) {
    auto ns = table.lookup(p);
    if (!ns || !Iri::is_valid(*ns)) return false;
  }
  auto& s = ns_state();
  std::lock_guard lock(s.mu);
  if (s.frozen) return false;
  s.table = std::move(table);
  s.frozen = true;
  return true;
}

const PrefixTable& namespaces() {
  auto& s = ns_state();
  std::lock_guard lock(s.mu);
  s.frozen = true;
  return s.table;
}

std::string term_iri(std::string_view curie) {
  auto iri = namespaces().expand(curie);
  if (!iri) throw std::invalid_argument("unknown vocabulary prefix in '" + std::string(curie) + "'");
  return *iri;
}

// ---------------------------------------------------------------------------
// Classes and properties

std::string Range::describe() const {
  std::string out;
  switch (kind) {
    case RangeKind::String: out = "xsd:string"; break;
    case RangeKind::Date: out = "xsd:date"; break;
    case RangeKind::Integer: out = "xsd:integer"; break;
    case RangeKind::Decimal: out = "xsd:decimal"; break;
    case RangeKind::Boolean: out = "xsd:boolean"; break;
    case RangeKind::Iri: out = "IRI"; break;
    case RangeKind::IriOrString: out = "IRI or xsd:string"; break;
    case RangeKind::Node: out = node_class; break;
  }
  if (!allowed.empty()) {
    out += " {";
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      if (i) out += ", ";
      out += allowed[i];
    }
    out += "}";
  }
  return out;
}

const PropertyDescriptor* ClassDescriptor::property(std::string_view c) const {
  for (const auto& p : properties) {
    if (p.name == c) return &p;
  }
  return nullptr;
}

namespace {

constexpr auto kUnbounded = std::nullopt;

Range str() { return {RangeKind::String, {}, {}}; }
Range date() { return {RangeKind::Date, {}, {}}; }
Range integer() { return {RangeKind::Integer, {}, {}}; }
Range decimal() { return {RangeKind::Decimal, {}, {}}; }
Range iri() { return {RangeKind::Iri, {}, {}}; }
Range iri_or_str() { return {RangeKind::IriOrString, {}, {}}; }
Range node(std::string cls) { return {RangeKind::Node, std::move(cls), {}}; }
Range one_of(std::vector<std::string> values) { return {RangeKind::String, {}, std::move(values)}; }

PropertyDescriptor required(std::string name, Range r) {
  return {std::move(name), std::move(r), {1, 1}, Requirement::StructuralRequired};
}
PropertyDescriptor single(std::string name, Range r) {
  return {std::move(name), std::move(r), {0, 1}, Requirement::Advisory};
}
PropertyDescriptor many(std::string name, Range r) {
  return {std::move(name), std::move(r), {0, kUnbounded}, Requirement::Advisory};
}

std::vector<ClassDescriptor> build_classes() {
  std::vector<ClassDescriptor> v;
  v.push_back({"TrustAssertion", "tao:TrustAssertion", std::nullopt,
               {single("tao:appliesTo", node("Provider")),
                single("tao:assertedBy", node("Customer")),
                single("tao:appliesToSource", node("ProviderWebsite")),
                many("tao:appliesToContent", node("TrustContent")),
                single("tao:trustValue", decimal())}});
  v.push_back({"ProviderWebsite", "usdl-trust:ProviderWebsite", std::nullopt,
               {required("usdl-trust:url", iri())}});
  v.push_back({"TrustContent", "usdl-trust:TrustContent", std::nullopt, {}});
  v.push_back({"CustomerReference", "usdl-trust:CustomerReference", "TrustContent",
               {single("usdl-trust:customerName", str()),
                single("schema:logo", iri()),
                single("usdl-trust:productImage", iri()),
                single("schema:description", str()),
                single("usdl-trust:hasTransaction", node("Transaction"))}});
  v.push_back({"Transaction", "usdl-trust:Transaction", "ServiceOffering",
               {required("usdl-trust:transactionDate", date())}});
  v.push_back({"ConfidentialityAgreement", "usdl-trust:ConfidentialityAgreement", "AgreementTerm",
               {required("usdl-trust:coversTransaction", node("Transaction"))}});
  v.push_back({"Certification", "usdl-trust:Certification", "TrustContent",
               {required("usdl-trust:standard", str()),
                single("usdl-trust:issuer", str()),
                single("usdl-trust:certificateDocument", iri()),
                single("schema:description", str())}});
  v.push_back({"Facility", "usdl-trust:Facility", "TrustContent",
               {required("usdl-trust:address", str()),
                single("usdl-trust:hasImage", iri()),
                many("usdl-trust:hasKPI", node("KPI")),
                single("usdl-trust:belongsToOrganization", node("Organization")),
                many("usdl-trust:hasSystem", node("ProviderSystem"))}});
  v.push_back({"KPI", "usdl-trust:KPI", std::nullopt,
               {required("schema:name", str()),
                required("schema:value", decimal()),
                single("schema:unitText", str()),
                single("usdl-trust:year", integer())}});
  v.push_back({"ProviderSystem", "usdl-trust:ProviderSystem", "TrustContent",
               {required("schema:name", str()),
                single("usdl-trust:systemKind", one_of({"machine", "software", "quality", "organizational"})),
                single("usdl-trust:manufacturer", str()),
                single("schema:image", iri()),
                single("schema:description", str())}});
  v.push_back({"Employee", "usdl-trust:Employee", "TrustContent",
               {required("schema:name", str()),
                single("schema:jobTitle", str()),
                single("schema:honorificPrefix", str()),
                single("schema:email", str()),
                single("schema:telephone", str()),
                single("schema:image", iri()),
                single("schema:knowsAbout", str())}});
  v.push_back({"Partner", "usdl-trust:Partner", "TrustContent",
               {required("schema:name", str()),
                single("schema:logo", iri()),
                single("schema:description", str()),
                many("usdl-trust:socialNetwork", iri())}});
  v.push_back({"LegalData", "usdl-trust:LegalData", "TrustContent",
               {single("usdl-trust:vatNumber", str()),
                single("usdl-trust:companyRegistrationNumber", str()),
                single("usdl-trust:leiCode", str()),
                single("usdl-trust:dunsNumber", str()),
                single("usdl-trust:legalForm", str()),
                many("usdl-trust:license", str())}});
  v.push_back({"Terms", "usdl-trust:Terms", "TrustContent",
               {single("usdl-trust:termsKind", one_of({"general", "delivery", "purchasing", "sales", "policy"})),
                single("usdl-trust:termsDocument", iri_or_str())}});
  v.push_back({"Publication", "usdl-trust:Publication", "CreativeWork",
               {required("schema:headline", str()),
                required("usdl-trust:publicationKind",
                         one_of({"success-story", "company-event", "research-paper", "newsfeed"})),
                single("usdl-trust:sourceKind", one_of({"professional", "internal"})),
                single("schema:url", iri())}});
  v.push_back({"Customer", "usdl:Customer", "Agent", {single("schema:name", str())}});
  v.push_back({"Provider", "usdl:Provider", "Agent",
               {single("schema:name", str()),
                single("usdl-trust:hasLegalData", node("LegalData")),
                many("usdl-trust:hasFacility", node("Facility")),
                many("usdl-trust:hasEmployee", node("Employee")),
                many("usdl-trust:hasReference", node("CustomerReference")),
                many("usdl-trust:hasCertification", node("Certification")),
                many("usdl-trust:hasPartner", node("Partner")),
                many("usdl-trust:hasPublication", node("Publication")),
                many("usdl-trust:hasTerms", node("Terms")),
                single("usdl-trust:hasWebsite", node("ProviderWebsite"))}});
  v.push_back({"ServiceOffering", "usdl:ServiceOffering", std::nullopt, {}});
  v.push_back({"Product", "schema:Product", std::nullopt, {single("schema:name", str())}});
  v.push_back({"Organization", "schema:Organization", std::nullopt, {single("schema:name", str())}});
  return v;
}

}  // namespace

const std::vector<ClassDescriptor>& known_classes() {
  static const std::vector<ClassDescriptor> classes = build_classes();
  return classes;
}

const ClassDescriptor* lookup_class(std::string_view name) {
  for (const auto& c : known_classes()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const ClassDescriptor* class_for_iri(std::string_view iri) {
  static const auto index = [] {
    std::unordered_map<std::string, const ClassDescriptor*> m;
    for (const auto& c : known_classes()) m.emplace(term_iri(c.curie), &c);
    return m;
  }();
  auto it = index.find(std::string(iri));
  return it == index.end() ? nullptr : it->second;
}

bool is_subclass_of(std::string_view class_name, std::string_view ancestor) {
  std::optional<std::string> cur{std::string(class_name)};
  for (int depth = 0; cur && depth < 16; ++depth) {
    if (*cur == ancestor) return true;
    const auto* d = lookup_class(*cur);
    if (!d) return false;
    cur = d->superclass;
  }
  return false;
}

std::optional<TrustCategory> category_of(std::string_view class_name) {
  if (class_name == "ProviderSystem") return TrustCategory::ProviderSystems;
  if (class_name == "MarketplaceAnalytics") return std::nullopt;
  auto c = category_from_name(class_name);
  if (c && lookup_class(class_name)) return c;
  return std::nullopt;
}

std::optional<std::string_view> class_for_category(TrustCategory c) {
  if (c == TrustCategory::MarketplaceAnalytics) return std::nullopt;
  if (c == TrustCategory::ProviderSystems) return "ProviderSystem";
  return category_name(c);
}

std::string vocabulary_reference_markdown() {
  std::ostringstream out;
  out << "# usdl-Trust vocabulary reference\n\n"
      << "Generated by `vocabdoc`; do not edit by hand.\n\n"
      << "## Namespaces\n\n"
      << "| Prefix | Namespace |\n|---|---|\n";
  const PrefixTable table = default_namespace_table();
  for (const auto& [label, ns] : table.entries()) {
    out << "| `" << label << "` | `" << ns << "` |\n";
  }
  out << "\n## Classes\n";
  for (const auto& c : known_classes()) {
    out << "\n### " << c.name << "\n\n"
        << "- Term: `" << c.curie << "`\n"
        << "- Superclass: " << (c.superclass ? "`" + *c.superclass + "`" : std::string("none")) << "\n";
    auto cat = category_of(c.name);
    out << "- Trust category: " << (cat ? std::string(category_name(*cat)) : std::string("none")) << "\n";
    if (c.properties.empty()) {
      out << "- Properties: none\n";
      continue;
    }
    out << "\n| Property | Range | Cardinality | Requirement |\n|---|---|---|---|\n";
    for (const auto& p : c.properties) {
      out << "| `" << p.name << "` | " << p.range.describe() << " | " << p.cardinality.min << ".."
          << (p.cardinality.max ? std::to_string(*p.cardinality.max) : std::string("*")) << " | "
          << (p.requirement == Requirement::StructuralRequired ? "required" : "advisory") << " |\n";
    }
  }
  out << "\n## Expert ratings\n\n| Category | MoSCoW rating |\n|---|---|\n";
  for (auto cat : kAllCategories) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%.1f", expert_rating(cat));
    out << "| " << category_name(cat) << " | " << buf << " |\n";
  }
  return out.str();
}

}  // namespace trust
