#include "trust/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace trust {

double round_report(double x) {
  static const double scale = std::pow(10.0, kReportDecimals);
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;  // no "-0.0" on the wire
}

std::string term_display(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Iri: return t.value;
    case Term::Kind::Blank: return "_:" + t.value;
    case Term::Kind::Literal: return t.to_string();
  }
  return {};
}

Json to_json(const ParseError& e) {
  return Json{{"error", "parse"},
              {"code", std::string(parse_code_id(e.code))},
              {"line", e.line},
              {"column", e.column},
              {"message", e.message}};
}

namespace {

Json finding_json(const Finding& f) {
  return Json{{"code", std::string(finding_code_id(f.code))},
              {"node", term_display(f.node)},
              {"property", f.property ? Json(*f.property) : Json(nullptr)},
              {"message", f.message}};
}

}  // namespace

Json to_json(const ValidationReport& r) {
  Json errors = Json::array(), warnings = Json::array();
  for (const auto& f : r.errors) errors.push_back(finding_json(f));
  for (const auto& f : r.warnings) warnings.push_back(finding_json(f));
  return Json{{"valid", r.valid}, {"errors", errors}, {"warnings", warnings}};
}

Json to_json(const TrustScoreReport& r) {
  Json breakdown = Json::array();
  for (const auto& b : r.breakdown) {
    breakdown.push_back(Json{{"category", std::string(category_name(b.score.category))},
                             {"score", round_report(b.score.score)},
                             {"weight", round_report(b.weight)},
                             {"contribution", round_report(b.contribution)},
                             {"evidence_count", b.score.evidence_count}});
  }
  return Json{{"provider_id", r.provider_id},
              {"profile", r.profile},
              {"aggregate", round_report(r.aggregate)},
              {"breakdown", breakdown}};
}

Json to_json(const DeltaReport& d) {
  Json cats = Json::array();
  for (const auto& [c, delta] : d.category_deltas) {
    cats.push_back(Json{{"category", std::string(category_name(c))}, {"delta", round_report(delta)}});
  }
  return Json{{"a", d.a}, {"b", d.b}, {"profile", d.profile}, {"aggregate_delta", round_report(d.aggregate_delta)},
              {"categories", cats}};
}

Json to_json(const AnalyticsEvidence& a) {
  return Json{{"registered_at", a.registered_at.to_string()},
              {"as_of", a.as_of.to_string()},
              {"profile_clicks", a.profile_clicks},
              {"verified_transactions", a.verified_transactions},
              {"verified_ratings", a.verified_ratings},
              {"identity_verified", a.identity_verified}};
}

Json to_json(const CustomerReference& r) {
  Json j = Json::object();
  if (r.customer_name) j["customer_name"] = *r.customer_name;
  if (r.customer_logo) j["customer_logo"] = r.customer_logo->str();
  if (r.product_image) j["product_image"] = r.product_image->str();
  if (r.product_description) j["product_description"] = *r.product_description;
  if (r.transaction) {
    j["transaction"] = Json{{"id", r.transaction->id},
                            {"date", r.transaction->date.to_string()},
                            {"confidential", r.transaction->confidential}};
  }
  return j;
}

Json to_json(const WeightProfile& w) {
  Json weights = Json::object();
  for (auto c : kAllCategories) weights[std::string(category_name(c))] = w.weight(c);
  return Json{{"name", w.name()}, {"weights", weights}};
}

Result<WeightProfile, std::string> weight_profile_from_json(const Json& j) {
  if (!j.is_object()) return std::string("weight profile must be a JSON object");
  if (!j.contains("name") || !j["name"].is_string()) return std::string("weight profile needs a string \"name\"");
  if (!j.contains("weights") || !j["weights"].is_object()) {
    return std::string("weight profile needs a \"weights\" object");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "name" && key != "weights") return "unexpected field \"" + key + "\" in weight profile";
  }
  std::map<TrustCategory, double> weights;
  for (const auto& [key, value] : j["weights"].items()) {
    auto c = category_from_name(key);
    if (!c) return "unknown category \"" + key + "\" in weights";
    if (!value.is_number()) return "weight for " + key + " must be a number";
    weights[*c] = value.get<double>();
  }
  return WeightProfile::make(j["name"].get<std::string>(), weights);
}

Result<WeightProfile, std::string> load_weight_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "cannot read weight profile " + path;
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) return "weight profile " + path + " is not valid JSON";
  return weight_profile_from_json(j);
}

Result<PrefixTable, std::string> namespace_table_from_json(const Json& j) {
  if (!j.is_object()) return std::string("namespace configuration must be a JSON object");
  PrefixTable table = default_namespace_table();
  for (const auto& [label, value] : j.items()) {
    if (!value.is_string() || !Iri::is_valid(value.get<std::string>())) {
      return "namespace for prefix '" + label + "' must be an absolute IRI";
    }
    const std::string ns = value.get<std::string>();
    const bool ok = table.lookup(label) ? table.rebind(label, ns) : table.insert(label, ns);
    if (!ok) return "namespace " + ns + " is bound to more than one prefix";
  }
  return table;
}

}  // namespace trust
