#pragma once

// JSON wire forms of reports, profiles and configuration files. Objects use
// nlohmann::json's sorted keys, so dump() output is canonical.

#include <string>

#include <json.hpp>

#include "trust/engine.hpp"
#include "trust/profile.hpp"
#include "trust/result.hpp"
#include "trust/shapes.hpp"
#include "trust/stad.hpp"

namespace trust {

using Json = nlohmann::json;

// Scores and weights leave the process rounded to this many decimals.
inline constexpr int kReportDecimals = 4;
double round_report(double x);

std::string term_display(const Term& t);  // IRI, "_:label" or the literal's N-Triples form

Json to_json(const ParseError& e);
Json to_json(const ValidationReport& r);
Json to_json(const TrustScoreReport& r);
Json to_json(const DeltaReport& d);
Json to_json(const AnalyticsEvidence& a);
Json to_json(const CustomerReference& r);
Json to_json(const WeightProfile& w);

// {"name": string, "weights": {<exactly the ten category keys>: number}}
Result<WeightProfile, std::string> weight_profile_from_json(const Json& j);
Result<WeightProfile, std::string> load_weight_profile_file(const std::string& path);

// {"<prefix>": "<namespace IRI>", ...} overriding defaults; unknown prefixes are added.
Result<PrefixTable, std::string> namespace_table_from_json(const Json& j);

}  // namespace trust
