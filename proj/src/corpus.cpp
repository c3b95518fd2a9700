#include "trust/corpus.hpp"

#include <array>
#include <cctype>
#include <deque>
#include <cstdio>
#include <sstream>
#include <utility>

#include "trust/vocab.hpp"

namespace trust {

std::map<std::string, double> default_prevalence() {
  return {
      {signal::kCustomerInfo, 0.76},  {signal::kCertifications, 0.90}, {signal::kPersonnel, 0.85},
      {signal::kPublications, 0.70},  {signal::kSystems, 0.33},        {signal::kCustomerLogos, 0.50},
      {signal::kCustomerNames, 0.50}, {signal::kLegalData, 0.60},      {signal::kPartners, 0.40},
      {signal::kTerms, 0.50},
  };
}

Result<CorpusParams, std::string> make_corpus_params(std::size_t n, std::uint64_t seed,
                                                     const std::map<std::string, double>& overrides) {
  CorpusParams p;
  p.n = n;
  p.seed = seed;
  for (const auto& [key, value] : overrides) {
    if (!p.prevalence.count(key)) return "unknown corpus signal '" + key + "'";
    if (!(value >= 0.0 && value <= 1.0)) return "prevalence of '" + key + "' must lie in [0, 1]";
    p.prevalence[key] = value;
  }
  const double info = p.prevalence[signal::kCustomerInfo];
  for (const char* sub : {signal::kCustomerLogos, signal::kCustomerNames}) {
    if (p.prevalence[sub] > info) {
      return std::string("prevalence of '") + sub + "' cannot exceed that of 'customer-info'";
    }
  }
  return p;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 document_rng(std::uint64_t seed, std::size_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (static_cast<std::uint64_t>(index) * 0xD1B54A32D192ED03ULL);
  return std::mt19937_64(splitmix64(state));
}

double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool bernoulli(std::mt19937_64& rng, double p) { return unit_interval(rng) < p; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

std::string corpus_generation_notes() {
  return "Per included category: facilities 1-3 (always present, 0-3 KPIs each), references 1-5, "
         "certifications 1-3, employees 1-6, publications 1-4, systems 1-4, partners 1-3, terms 1-3. "
         "Random source: mt19937_64 seeded per document with SplitMix64(seed, index).";
}

namespace {

constexpr std::array kCompanyStems = {"Alpen", "Danube", "Nordic", "Rhein", "Tatra", "Adria", "Baltic", "Carpat",
                                      "Moravia", "Bohemia", "Styria", "Tirol"};
constexpr std::array kCompanyTrades = {"Precision", "Casting", "Machining", "Plastics", "Electronics",
                                       "Engineering", "Forming", "Coating"};
constexpr std::array kLegalForms = {"GmbH", "AG", "s.r.o.", "a.s.", "KG", "Ltd"};
constexpr std::array kCities = {"Vienna", "Bratislava", "Graz", "Linz", "Brno", "Kosice", "Munich", "Zilina"};
constexpr std::array kStreets = {"Industriestrasse", "Hauptplatz", "Gewerbepark", "Priemyselna", "Technologicka"};
constexpr std::array kFirstNames = {"Anna", "Peter", "Jana", "Martin", "Eva", "Lukas", "Maria", "Tomas",
                                    "Sophie", "Jakob"};
constexpr std::array kLastNames = {"Novak", "Huber", "Kovac", "Wagner", "Horvath", "Bauer", "Steiner",
                                   "Varga"};
constexpr std::array kTitles = {"Key Account Manager", "Head of Sales", "Quality Manager", "Plant Manager",
                                "Project Engineer", "Managing Director"};
constexpr std::array kStandards = {"ISO 9001", "ISO 14001", "IATF 16949", "ISO 45001", "ISO 50001",
                                   "ISO/IEC 27001"};
constexpr std::array kIssuers = {"TUV Austria", "DEKRA", "Bureau Veritas", "SGS", "Lloyd's Register"};
constexpr std::array kMachines = {"5-axis machining centre", "die casting cell", "injection moulding line",
                                  "coordinate measuring machine", "laser cutting system", "ERP system"};
constexpr std::array kMakers = {"DMG Mori", "Buhler", "Engel", "Zeiss", "Trumpf", "SAP"};
constexpr std::array kSystemKinds = {"machine", "machine", "machine", "software", "quality", "organizational"};
constexpr std::array kPublicationKinds = {"success-story", "company-event", "research-paper", "newsfeed"};
constexpr std::array kTermsKinds = {"general", "delivery", "purchasing", "sales", "policy"};
constexpr std::array kKpis = {std::pair{"production area", "m2"}, std::pair{"employees", "persons"},
                              std::pair{"annual turnover", "MEUR"}, std::pair{"yearly investment", "MEUR"},
                              std::pair{"foundation year", "year"}};
constexpr std::array kCountryPrefixes = {"AT", "SK", "DE", "CZ", "HU", "PL"};

template <class A>
const char* pick(std::mt19937_64& rng, const A& values) {
  return values[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(values.size()) - 1))];
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string digits(std::mt19937_64& rng, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += static_cast<char>('0' + uniform_int(rng, 0, 9));
  return s;
}

std::string date_literal(std::mt19937_64& rng) {
  const int y = uniform_int(rng, 2012, 2023);
  const int m = uniform_int(rng, 1, 12);
  const int d = uniform_int(rng, 1, 28);
  char buf[48];
  std::snprintf(buf, sizeof buf, "\"%04d-%02d-%02d\"^^xsd:date", y, m, d);
  return buf;
}

// One subject with its predicate/object lists, written in ';'/',' form.
struct Statement {
  std::string subject;
  std::vector<std::pair<std::string, std::vector<std::string>>> predicates;

  Statement& add(std::string predicate, std::string object) {
    for (auto& [p, objs] : predicates) {
      if (p == predicate) {
        objs.push_back(std::move(object));
        return *this;
      }
    }
    predicates.push_back({std::move(predicate), {std::move(object)}});
    return *this;
  }
};

class DocumentBuilder {
 public:
  Statement& node(std::string subject, std::string type) {
    statements_.push_back({std::move(subject), {}});
    statements_.back().add("a", std::move(type));
    return statements_.back();
  }

  std::string render(const std::string& base) const {
    std::ostringstream out;
    const PrefixTable table = default_namespace_table();
    for (const auto& [label, ns] : table.entries()) {
      if (label == "gr" || label == "foaf" || label == "dc" || label == "tao") continue;
      out << "@prefix " << label << ": <" << ns << "> .\n";
    }
    out << "@prefix ex: <" << base << "> .\n";
    for (const auto& s : statements_) {
      out << '\n' << s.subject;
      for (std::size_t i = 0; i < s.predicates.size(); ++i) {
        const auto& [p, objs] = s.predicates[i];
        out << (i == 0 ? " " : " ;\n    ") << p << ' ';
        for (std::size_t k = 0; k < objs.size(); ++k) out << (k ? ", " : "") << objs[k];
      }
      out << " .\n";
    }
    return out.str();
  }

 private:
  std::deque<Statement> statements_;  // stable references
};

std::string slug(std::string s) {
  for (auto& c : s) {
    c = std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                                                    : '-';
  }
  return s;
}

}  // namespace

CorpusDocument generate_document(const CorpusParams& params, std::size_t index) {
  auto rng = document_rng(params.seed, index);
  auto prevalence = [&](const char* key) {
    auto it = params.prevalence.find(key);
    return it == params.prevalence.end() ? 0.0 : it->second;
  };

  CorpusDocument doc;
  char name_buf[32];
  std::snprintf(name_buf, sizeof name_buf, "provider-%04zu.stad", index);
  doc.file_name = name_buf;

  // Signal draws come first and in a fixed order.
  auto& sig = doc.signals;
  const double info = prevalence(signal::kCustomerInfo);
  sig[signal::kCustomerInfo] = bernoulli(rng, info);
  const double logo_given_info = info > 0 ? prevalence(signal::kCustomerLogos) / info : 0.0;
  const double name_given_info = info > 0 ? prevalence(signal::kCustomerNames) / info : 0.0;
  const bool logo_draw = bernoulli(rng, logo_given_info);
  const bool name_draw = bernoulli(rng, name_given_info);
  sig[signal::kCustomerLogos] = sig[signal::kCustomerInfo] && logo_draw;
  sig[signal::kCustomerNames] = sig[signal::kCustomerInfo] && name_draw;
  for (const char* key : {signal::kCertifications, signal::kPersonnel, signal::kPublications, signal::kSystems,
                          signal::kLegalData, signal::kPartners, signal::kTerms}) {
    sig[key] = bernoulli(rng, prevalence(key));
  }

  const std::string stem = pick(rng, kCompanyStems);
  const std::string trade = pick(rng, kCompanyTrades);
  const std::string legal_form = pick(rng, kLegalForms);
  const std::string company = stem + " " + trade + " " + legal_form;
  const std::string host = "https://www." + slug(stem + "-" + trade) + ".example";
  char base[96];
  std::snprintf(base, sizeof base, "http://corpus.example.org/s%llu/p%zu/",
                static_cast<unsigned long long>(params.seed), index);

  DocumentBuilder b;
  Statement& provider = b.node("ex:provider", "usdl:Provider");
  provider.add("schema:name", quoted(company));
  provider.add("usdl-trust:hasWebsite", "ex:website");
  b.node("ex:website", "usdl-trust:ProviderWebsite").add("usdl-trust:url", "<" + host + ">");

  const int facility_count = uniform_int(rng, 1, 3);
  std::vector<Statement*> facilities;
  for (int f = 1; f <= facility_count; ++f) {
    const std::string id = "ex:facility" + std::to_string(f);
    provider.add("usdl-trust:hasFacility", id);
    Statement& fac = b.node(id, "usdl-trust:Facility");
    const std::string street = pick(rng, kStreets);
    const int number = uniform_int(rng, 1, 120);
    const std::string city = pick(rng, kCities);
    fac.add("usdl-trust:address", quoted(street + " " + std::to_string(number) + ", " + city));
    if (bernoulli(rng, 0.6)) fac.add("usdl-trust:hasImage", "<" + host + "/img/site" + std::to_string(f) + ".jpg>");
    const int kpis = uniform_int(rng, 0, 3);
    for (int k = 1; k <= kpis; ++k) {
      const auto& [kpi_name, unit] = kKpis[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(kKpis.size()) - 1))];
      std::string value = std::to_string(uniform_int(rng, 1, 9999));
      if (bernoulli(rng, 0.5)) value += "." + std::to_string(uniform_int(rng, 1, 9));
      // Mix of blank-node and named KPI nodes.
      if (bernoulli(rng, 0.5)) {
        const std::string blank = "_:kpi" + std::to_string(f) + "x" + std::to_string(k);
        fac.add("usdl-trust:hasKPI", blank);
        Statement& kpi = b.node(blank, "usdl-trust:KPI");
        kpi.add("schema:name", quoted(kpi_name)).add("schema:value", value).add("schema:unitText", quoted(unit));
      } else {
        const std::string named = "ex:kpi" + std::to_string(f) + "-" + std::to_string(k);
        fac.add("usdl-trust:hasKPI", named);
        Statement& kpi = b.node(named, "usdl-trust:KPI");
        kpi.add("schema:name", quoted(kpi_name)).add("schema:value", "\"" + value + "\"^^xsd:decimal");
        kpi.add("usdl-trust:year", std::to_string(uniform_int(rng, 2015, 2023)));
      }
    }
    if (bernoulli(rng, 0.5)) {
      const std::string org = "ex:org" + std::to_string(f);
      fac.add("usdl-trust:belongsToOrganization", org);
      b.node(org, "schema:Organization").add("schema:name", quoted(company));
    }
    facilities.push_back(&fac);
  }

  if (sig[signal::kSystems]) {
    const int n = uniform_int(rng, 1, 4);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:system" + std::to_string(i);
      facilities[static_cast<std::size_t>(uniform_int(rng, 0, facility_count - 1))]->add("usdl-trust:hasSystem", id);
      Statement& sys = b.node(id, "usdl-trust:ProviderSystem");
      const std::size_t m = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(kMachines.size()) - 1));
      sys.add("schema:name", quoted(kMachines[m]));
      sys.add("usdl-trust:systemKind", quoted(pick(rng, kSystemKinds)));
      if (bernoulli(rng, 0.7)) sys.add("usdl-trust:manufacturer", quoted(kMakers[m]));
      if (bernoulli(rng, 0.5)) sys.add("schema:image", "<" + host + "/img/system" + std::to_string(i) + ".jpg>");
      if (bernoulli(rng, 0.4)) sys.add("schema:description", "\"In operation since " +
                                                                   std::to_string(uniform_int(rng, 2005, 2023)) + "\"@en");
    }
  }

  if (sig[signal::kCustomerInfo]) {
    const int n = uniform_int(rng, 1, 5);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:reference" + std::to_string(i);
      provider.add("usdl-trust:hasReference", id);
      Statement& ref = b.node(id, "usdl-trust:CustomerReference");
      const std::string customer_stem = pick(rng, kCompanyStems);
      const std::string customer = customer_stem + " " + pick(rng, kCompanyTrades);
      // At least one reference carries a signal that was drawn.
      if (sig[signal::kCustomerNames] && (i == 1 || bernoulli(rng, 0.7))) {
        ref.add("usdl-trust:customerName", quoted(customer));
      }
      if (sig[signal::kCustomerLogos] && (i == 1 || bernoulli(rng, 0.7))) {
        ref.add("schema:logo", "<" + host + "/logos/customer" + std::to_string(i) + ".png>");
      }
      if (bernoulli(rng, 0.4)) ref.add("usdl-trust:productImage", "<" + host + "/img/product" + std::to_string(i) + ".jpg>");
      if (bernoulli(rng, 0.6)) ref.add("schema:description", quoted("Series supply for " + customer));
      if (bernoulli(rng, 0.3)) {
        const std::string tx = "ex:tx" + std::to_string(i);
        ref.add("usdl-trust:hasTransaction", tx);
        b.node(tx, "usdl-trust:Transaction").add("usdl-trust:transactionDate", date_literal(rng));
        if (bernoulli(rng, 0.25)) {
          b.node("ex:nda" + std::to_string(i), "usdl-trust:ConfidentialityAgreement")
              .add("usdl-trust:coversTransaction", tx);
        }
      }
    }
  }

  if (sig[signal::kCertifications]) {
    const int n = uniform_int(rng, 1, 3);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:cert" + std::to_string(i);
      provider.add("usdl-trust:hasCertification", id);
      Statement& cert = b.node(id, "usdl-trust:Certification");
      cert.add("usdl-trust:standard", quoted(pick(rng, kStandards)));
      if (bernoulli(rng, 0.7)) cert.add("usdl-trust:issuer", quoted(pick(rng, kIssuers)));
      if (bernoulli(rng, 0.5)) cert.add("usdl-trust:certificateDocument", "<" + host + "/certs/" + std::to_string(i) + ".pdf>");
    }
  }

  if (sig[signal::kPersonnel]) {
    const int n = uniform_int(rng, 1, 6);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:employee" + std::to_string(i);
      provider.add("usdl-trust:hasEmployee", id);
      Statement& emp = b.node(id, "usdl-trust:Employee");
      const std::string first = pick(rng, kFirstNames);
      const std::string last = pick(rng, kLastNames);
      emp.add("schema:name", quoted(first + " " + last));
      if (bernoulli(rng, 0.8)) emp.add("schema:jobTitle", quoted(pick(rng, kTitles)));
      if (bernoulli(rng, 0.2)) emp.add("schema:honorificPrefix", quoted("Ing."));
      if (bernoulli(rng, 0.6)) emp.add("schema:email", quoted(slug(first) + "." + slug(last) + "@mail.example"));
      if (bernoulli(rng, 0.5)) emp.add("schema:telephone", quoted("+43 1 " + digits(rng, 6)));
      if (bernoulli(rng, 0.4)) emp.add("schema:image", "<" + host + "/team/" + std::to_string(i) + ".jpg>");
      if (bernoulli(rng, 0.3)) emp.add("schema:knowsAbout", quoted(pick(rng, kMachines)));
    }
  }

  if (sig[signal::kPartners]) {
    const int n = uniform_int(rng, 1, 3);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:partner" + std::to_string(i);
      provider.add("usdl-trust:hasPartner", id);
      Statement& partner = b.node(id, "usdl-trust:Partner");
      partner.add("schema:name", quoted(std::string(pick(rng, kCompanyStems)) + " Cluster"));
      if (bernoulli(rng, 0.5)) partner.add("schema:description", quoted("Regional industry network"));
      if (bernoulli(rng, 0.5)) partner.add("schema:logo", "<" + host + "/logos/partner" + std::to_string(i) + ".png>");
      if (bernoulli(rng, 0.2)) partner.add("usdl-trust:socialNetwork", "<https://social.example/" + slug(stem) + ">");
    }
  }

  if (sig[signal::kLegalData]) {
    provider.add("usdl-trust:hasLegalData", "ex:legal");
    Statement& legal = b.node("ex:legal", "usdl-trust:LegalData");
    const std::string country = pick(rng, kCountryPrefixes);
    const bool vat = bernoulli(rng, 0.8);
    if (vat) legal.add("usdl-trust:vatNumber", quoted(country + "U" + digits(rng, 8)));
    if (!vat || bernoulli(rng, 0.5)) legal.add("usdl-trust:companyRegistrationNumber", quoted("FN " + digits(rng, 6) + "a"));
    if (bernoulli(rng, 0.2)) legal.add("usdl-trust:dunsNumber", quoted(digits(rng, 9)));
    if (bernoulli(rng, 0.7)) legal.add("usdl-trust:legalForm", quoted(legal_form));
  }

  if (sig[signal::kTerms]) {
    const int n = uniform_int(rng, 1, 3);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:terms" + std::to_string(i);
      provider.add("usdl-trust:hasTerms", id);
      Statement& terms = b.node(id, "usdl-trust:Terms");
      terms.add("usdl-trust:termsKind", quoted(pick(rng, kTermsKinds)));
      if (bernoulli(rng, 0.6)) terms.add("usdl-trust:termsDocument", "<" + host + "/terms/" + std::to_string(i) + ".pdf>");
    }
  }

  if (sig[signal::kPublications]) {
    const int n = uniform_int(rng, 1, 4);
    for (int i = 1; i <= n; ++i) {
      const std::string id = "ex:publication" + std::to_string(i);
      provider.add("usdl-trust:hasPublication", id);
      Statement& pub = b.node(id, "usdl-trust:Publication");
      const std::string kind = pick(rng, kPublicationKinds);
      pub.add("schema:headline", quoted(stem + " " + kind + " " + std::to_string(i)));
      pub.add("usdl-trust:publicationKind", quoted(kind));
      if (bernoulli(rng, 0.7)) {
        pub.add("usdl-trust:sourceKind", quoted(bernoulli(rng, 0.5) ? "professional" : "internal"));
      }
      if (bernoulli(rng, 0.5)) pub.add("schema:url", "<" + host + "/news/" + std::to_string(i) + ">");
    }
  }

  doc.text = b.render(base);
  return doc;
}

std::vector<CorpusDocument> generate_corpus(const CorpusParams& params) {
  std::vector<CorpusDocument> docs;
  docs.reserve(params.n);
  for (std::size_t i = 0; i < params.n; ++i) docs.push_back(generate_document(params, i));
  return docs;
}

}  // namespace trust
