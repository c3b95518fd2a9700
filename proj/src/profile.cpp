#include "trust/profile.hpp"

#include <charconv>
#include <cstdlib>

#include "lexical.hpp"

namespace trust {

std::string_view system_kind_name(SystemKind k) {
  switch (k) {
    case SystemKind::Machine: return "machine";
    case SystemKind::Software: return "software";
    case SystemKind::Quality: return "quality";
    case SystemKind::Organizational: return "organizational";
  }
  return "";
}

std::string_view publication_kind_name(PublicationKind k) {
  switch (k) {
    case PublicationKind::SuccessStory: return "success-story";
    case PublicationKind::CompanyEvent: return "company-event";
    case PublicationKind::ResearchPaper: return "research-paper";
    case PublicationKind::Newsfeed: return "newsfeed";
  }
  return "";
}

std::string_view publication_source_name(PublicationSource s) {
  return s == PublicationSource::Professional ? "professional" : "internal";
}

std::string_view terms_kind_name(TermsKind k) {
  switch (k) {
    case TermsKind::General: return "general";
    case TermsKind::Delivery: return "delivery";
    case TermsKind::Purchasing: return "purchasing";
    case TermsKind::Sales: return "sales";
    case TermsKind::Policy: return "policy";
  }
  return "";
}

namespace {

template <class E, std::size_t N>
std::optional<E> enum_from(std::string_view text, const E (&values)[N], std::string_view (*name)(E)) {
  for (E v : values) {
    if (name(v) == text) return v;
  }
  return std::nullopt;
}

constexpr SystemKind kSystemKinds[] = {SystemKind::Machine, SystemKind::Software, SystemKind::Quality,
                                       SystemKind::Organizational};
constexpr PublicationKind kPublicationKinds[] = {PublicationKind::SuccessStory, PublicationKind::CompanyEvent,
                                                 PublicationKind::ResearchPaper, PublicationKind::Newsfeed};
constexpr PublicationSource kSources[] = {PublicationSource::Professional, PublicationSource::Internal};
constexpr TermsKind kTermsKinds[] = {TermsKind::General, TermsKind::Delivery, TermsKind::Purchasing,
                                     TermsKind::Sales, TermsKind::Policy};

std::string node_id(const Term& t) { return t.is_blank() ? "_:" + t.value : t.value; }

// Read-only accessor over one subject's properties.
class NodeView {
 public:
  NodeView(const TrustGraph& g, Term node) : g_(g), node_(std::move(node)) {}

  std::optional<std::string> text(std::string_view curie) const {
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (o.is_literal()) return o.value;
    }
    return std::nullopt;
  }

  std::vector<std::string> texts(std::string_view curie) const {
    std::vector<std::string> out;
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (o.is_literal()) out.push_back(o.value);
    }
    return out;
  }

  std::optional<Iri> iri(std::string_view curie) const {
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (o.is_iri()) {
        if (auto v = Iri::make(o.value)) return v;
      }
    }
    return std::nullopt;
  }

  std::vector<Iri> iris(std::string_view curie) const {
    std::vector<Iri> out;
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (!o.is_iri()) continue;
      if (auto v = Iri::make(o.value)) out.push_back(*v);
    }
    return out;
  }

  std::optional<double> number(std::string_view curie) const {
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if ((o.has_datatype("decimal") || o.has_datatype("integer")) && lexical::valid_decimal(o.value)) {
        return std::strtod(o.value.c_str(), nullptr);
      }
    }
    return std::nullopt;
  }

  std::optional<long long> integer(std::string_view curie) const {
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (!o.has_datatype("integer")) continue;
      std::string_view s = o.value;
      if (!s.empty() && s[0] == '+') s.remove_prefix(1);
      long long v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec == std::errc() && ptr == s.data() + s.size()) return v;
    }
    return std::nullopt;
  }

  std::optional<Date> date(std::string_view curie) const {
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (o.has_datatype("date")) {
        if (auto d = Date::parse(o.value)) return d;
      }
    }
    return std::nullopt;
  }

  // Linked nodes that carry the given class.
  std::vector<Term> linked(std::string_view curie, std::string_view class_curie) const {
    std::vector<Term> out;
    const std::string cls = term_iri(class_curie);
    for (const auto& o : g_.objects(node_, term_iri(curie))) {
      if (!o.is_node()) continue;
      for (const auto& t : g_.types_of(o)) {
        if (t.value == cls) {
          out.push_back(o);
          break;
        }
      }
    }
    return out;
  }

  bool linked_any(std::string_view curie) const { return !g_.objects(node_, term_iri(curie)).empty(); }

 private:
  const TrustGraph& g_;
  Term node_;
};

class Projector {
 public:
  explicit Projector(const TrustGraph& g) : g_(g) {}

  std::vector<Term> nodes(std::string_view class_curie) const { return g_.subjects_of_type(term_iri(class_curie)); }

  std::optional<Kpi> kpi(const Term& n) const {
    NodeView v(g_, n);
    auto name = v.text("schema:name");
    auto value = v.number("schema:value");
    if (!name || !value) return std::nullopt;
    return Kpi{*name, *value, v.text("schema:unitText"), v.integer("usdl-trust:year")};
  }

  std::optional<ProviderSystem> system(const Term& n) const {
    NodeView v(g_, n);
    auto name = v.text("schema:name");
    if (!name) return std::nullopt;
    ProviderSystem s;
    s.name = *name;
    if (auto k = v.text("usdl-trust:systemKind")) s.kind = enum_from(*k, kSystemKinds, system_kind_name);
    s.manufacturer = v.text("usdl-trust:manufacturer");
    s.image = v.iri("schema:image");
    s.description = v.text("schema:description");
    return s;
  }

  std::optional<Facility> facility(const Term& n) const {
    NodeView v(g_, n);
    auto address = v.text("usdl-trust:address");
    if (!address) return std::nullopt;
    Facility f;
    f.address = *address;
    f.image = v.iri("usdl-trust:hasImage");
    for (const auto& k : v.linked("usdl-trust:hasKPI", "usdl-trust:KPI")) {
      if (auto p = kpi(k)) f.kpis.push_back(std::move(*p));
    }
    f.organization = v.iri("usdl-trust:belongsToOrganization");
    for (const auto& s : v.linked("usdl-trust:hasSystem", "usdl-trust:ProviderSystem")) {
      if (auto p = system(s)) f.systems.push_back(std::move(*p));
    }
    return f;
  }

  std::optional<Employee> employee(const Term& n) const {
    NodeView v(g_, n);
    auto name = v.text("schema:name");
    if (!name) return std::nullopt;
    return Employee{*name,
                    v.text("schema:jobTitle"),
                    v.text("schema:honorificPrefix"),
                    v.text("schema:email"),
                    v.text("schema:telephone"),
                    v.iri("schema:image"),
                    v.text("schema:knowsAbout")};
  }

  bool under_agreement(const Term& tx) const {
    for (const auto& ca : nodes("usdl-trust:ConfidentialityAgreement")) {
      for (const auto& o : g_.objects(ca, term_iri("usdl-trust:coversTransaction"))) {
        if (o == tx) return true;
      }
    }
    return false;
  }

  // nullopt when the reference links a transaction that cannot be projected:
  // such a reference could hide a confidentiality agreement, so it is dropped.
  std::optional<CustomerReference> reference(const Term& n) const {
    NodeView v(g_, n);
    CustomerReference r;
    r.customer_name = v.text("usdl-trust:customerName");
    r.customer_logo = v.iri("schema:logo");
    r.product_image = v.iri("usdl-trust:productImage");
    r.product_description = v.text("schema:description");
    if (v.linked_any("usdl-trust:hasTransaction")) {
      auto txs = v.linked("usdl-trust:hasTransaction", "usdl-trust:Transaction");
      if (txs.empty()) return std::nullopt;
      const Term& tx = txs.front();
      auto date = NodeView(g_, tx).date("usdl-trust:transactionDate");
      if (!date) return std::nullopt;
      r.transaction = TransactionRef{node_id(tx), *date, under_agreement(tx)};
    }
    return r;
  }

  std::optional<Certification> certification(const Term& n) const {
    NodeView v(g_, n);
    auto standard = v.text("usdl-trust:standard");
    if (!standard) return std::nullopt;
    return Certification{*standard, v.text("usdl-trust:issuer"), v.iri("usdl-trust:certificateDocument"),
                         v.text("schema:description")};
  }

  std::optional<Partner> partner(const Term& n) const {
    NodeView v(g_, n);
    auto name = v.text("schema:name");
    if (!name) return std::nullopt;
    return Partner{*name, v.iri("schema:logo"), v.text("schema:description"), v.iris("usdl-trust:socialNetwork")};
  }

  std::optional<Publication> publication(const Term& n) const {
    NodeView v(g_, n);
    auto title = v.text("schema:headline");
    auto kind_text = v.text("usdl-trust:publicationKind");
    if (!title || !kind_text) return std::nullopt;
    auto kind = enum_from(*kind_text, kPublicationKinds, publication_kind_name);
    if (!kind) return std::nullopt;
    Publication p;
    p.title = *title;
    p.kind = *kind;
    if (auto s = v.text("usdl-trust:sourceKind")) p.source = enum_from(*s, kSources, publication_source_name);
    p.link = v.iri("schema:url");
    return p;
  }

  std::optional<TermsDoc> terms(const Term& n) const {
    NodeView v(g_, n);
    TermsDoc t;
    if (auto k = v.text("usdl-trust:termsKind")) {
      auto kind = enum_from(*k, kTermsKinds, terms_kind_name);
      if (!kind) return std::nullopt;
      t.kind = *kind;
    }
    if (auto iri = v.iri("usdl-trust:termsDocument")) {
      t.document = *iri;
    } else if (auto text = v.text("usdl-trust:termsDocument")) {
      t.document = *text;
    }
    return t;
  }

  std::optional<LegalData> legal(const Term& n) const {
    NodeView v(g_, n);
    LegalData l;
    l.vat = v.text("usdl-trust:vatNumber");
    l.crn = v.text("usdl-trust:companyRegistrationNumber");
    l.lei = v.text("usdl-trust:leiCode");
    l.duns = v.text("usdl-trust:dunsNumber");
    l.legal_form = v.text("usdl-trust:legalForm");
    l.licenses = v.texts("usdl-trust:license");
    if (!l.vat && !l.crn && !l.lei && !l.duns && !l.legal_form && l.licenses.empty()) return std::nullopt;
    return l;
  }

 private:
  const TrustGraph& g_;
};

template <class T, class F>
void collect(const Projector& p, std::string_view class_curie, std::vector<T>& out, F project) {
  for (const auto& n : p.nodes(class_curie)) {
    if (auto rec = (p.*project)(n)) out.push_back(std::move(*rec));
  }
}

}  // namespace

Result<ProviderProfile, ExtractError> extract_profile(const TrustGraph& graph) {
  Projector p(graph);
  auto providers = p.nodes("usdl:Provider");
  if (providers.empty()) return ExtractError{"document declares no usdl:Provider node"};
  if (providers.size() > 1) {
    return ExtractError{"document declares " + std::to_string(providers.size()) +
                        " usdl:Provider nodes; exactly one is required"};
  }
  const Term& provider = providers.front();
  if (!provider.is_iri()) return ExtractError{"the usdl:Provider node must be identified by an IRI"};
  auto id = Iri::make(provider.value);
  if (!id) return ExtractError{"the usdl:Provider IRI is malformed"};

  ProviderProfile profile{*id, std::nullopt, {}, {}, {}, {}, {}, {}, {}, std::nullopt};
  for (const auto& n : p.nodes("usdl-trust:LegalData")) {
    if (auto l = p.legal(n)) {
      profile.legal = std::move(*l);
      break;
    }
  }
  collect(p, "usdl-trust:Facility", profile.facilities, &Projector::facility);
  collect(p, "usdl-trust:Employee", profile.employees, &Projector::employee);
  collect(p, "usdl-trust:CustomerReference", profile.references, &Projector::reference);
  collect(p, "usdl-trust:Certification", profile.certifications, &Projector::certification);
  collect(p, "usdl-trust:Partner", profile.partners, &Projector::partner);
  collect(p, "usdl-trust:Publication", profile.publications, &Projector::publication);
  collect(p, "usdl-trust:Terms", profile.terms, &Projector::terms);
  for (const auto& n : p.nodes("usdl-trust:ProviderWebsite")) {
    if (auto url = NodeView(graph, n).iri("usdl-trust:url")) {
      profile.website = ProviderWebsite{*url};
      break;
    }
  }
  return profile;
}

}  // namespace trust
